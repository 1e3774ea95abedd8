//! JSON interchange for states, POVMs and ensembles.
//!
//! Density matrices: `{"dims":[d1,...,dk], "re":[[...]], "im":[[...]]}` with
//! row-major entry arrays, matrix side = product of dims. Pure states use
//! flat `re`/`im` vectors. Serialization formats every float with 17
//! significant digits so reports are byte-identical across runs.

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::dims::Dims;
use crate::ensemble::{Ensemble, EnsembleKind};
use crate::error::{Result, StateError};
use crate::linalg::{C64, CMatrix, CVector};
use crate::povm::Povm;
use crate::pure::PureState;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityJson {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PureJson {
    pub dims: Vec<usize>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

/// A state file holds either a density matrix or a pure-state vector; the
/// two are distinguished by the shape of `re`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateJson {
    Density(DensityJson),
    Pure(PureJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmJson {
    pub dim: usize,
    pub effects: Vec<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleJson {
    pub kind: String,
    pub weights: Vec<f64>,
    pub members: Vec<DensityJson>,
}

fn matrix_to_grids(m: &CMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let (rows, cols) = m.shape();
    let mut re = Vec::with_capacity(rows);
    let mut im = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut re_row = Vec::with_capacity(cols);
        let mut im_row = Vec::with_capacity(cols);
        for c in 0..cols {
            re_row.push(m[(r, c)].re);
            im_row.push(m[(r, c)].im);
        }
        re.push(re_row);
        im.push(im_row);
    }
    (re, im)
}

fn grids_to_matrix(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<CMatrix> {
    let rows = re.len();
    if rows == 0 || im.len() != rows {
        return Err(StateError::InvalidArgument(
            "re and im grids must be non-empty with equal shape".into(),
        ));
    }
    let cols = re[0].len();
    for (rr, ir) in re.iter().zip(im.iter()) {
        if rr.len() != cols || ir.len() != cols {
            return Err(StateError::InvalidArgument(
                "ragged entry grid in state file".into(),
            ));
        }
    }
    Ok(CMatrix::from_fn(rows, cols, |r, c| C64::new(re[r][c], im[r][c])))
}

impl DensityJson {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let (re, im) = matrix_to_grids(rho.matrix());
        Self {
            dims: rho.dims().factors().to_vec(),
            re,
            im,
        }
    }

    /// Validating conversion: schema shape problems come back as
    /// `InvalidArgument`, physics violations as the dedicated variants.
    pub fn to_state(&self) -> Result<DensityMatrix> {
        let dims = Dims::new(self.dims.clone())?;
        let mat = grids_to_matrix(&self.re, &self.im)?;
        DensityMatrix::new(dims, mat)
    }
}

impl PureJson {
    pub fn from_state(phi: &PureState) -> Self {
        Self {
            dims: phi.dims().factors().to_vec(),
            re: phi.amplitudes().iter().map(|c| c.re).collect(),
            im: phi.amplitudes().iter().map(|c| c.im).collect(),
        }
    }

    pub fn to_state(&self) -> Result<PureState> {
        let dims = Dims::new(self.dims.clone())?;
        if self.re.len() != self.im.len() {
            return Err(StateError::InvalidArgument(
                "re and im vectors differ in length".into(),
            ));
        }
        let amps = CVector::from_iterator(
            self.re.len(),
            self.re.iter().zip(self.im.iter()).map(|(&r, &i)| C64::new(r, i)),
        );
        PureState::new(dims, amps)
    }
}

impl PovmJson {
    pub fn from_povm(povm: &Povm) -> Self {
        Self {
            dim: povm.dim(),
            effects: povm
                .effects()
                .iter()
                .map(|e| {
                    let (re, im) = matrix_to_grids(e);
                    MatrixJson { re, im }
                })
                .collect(),
        }
    }

    pub fn to_povm(&self) -> Result<Povm> {
        let effects = self
            .effects
            .iter()
            .map(|m| grids_to_matrix(&m.re, &m.im))
            .collect::<Result<Vec<_>>>()?;
        Povm::new(effects)
    }
}

impl EnsembleJson {
    pub fn from_ensemble(e: &Ensemble) -> Self {
        Self {
            kind: match e.kind() {
                EnsembleKind::PureOnly => "pure".into(),
                EnsembleKind::Mixed => "mixed".into(),
            },
            weights: e.weights().to_vec(),
            members: e.members().iter().map(DensityJson::from_state).collect(),
        }
    }

    /// Validates against the declared target state.
    pub fn to_ensemble(&self, target: &DensityMatrix) -> Result<Ensemble> {
        let kind = match self.kind.as_str() {
            "pure" => EnsembleKind::PureOnly,
            "mixed" => EnsembleKind::Mixed,
            other => {
                return Err(StateError::InvalidEnsemble(format!(
                    "unknown ensemble kind {other:?}"
                )))
            }
        };
        let members = self
            .members
            .iter()
            .map(|m| m.to_state())
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(self.weights.clone(), members, kind, target)
    }
}

/// serde_json formatter that writes every f64 with 17 significant digits.
struct SigDigits17;

impl serde_json::ser::Formatter for SigDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes with the fixed 17-significant-digit float format. Output is a
/// deterministic function of the value.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits17);
    value
        .serialize(&mut ser)
        .expect("JSON serialization cannot fail for plain data");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
