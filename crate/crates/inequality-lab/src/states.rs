//! Canonical states for the verification campaigns, including the 3x3
//! unextendible-product-basis construction that is PPT yet entangled.

use qstate_core::linalg::{creal, CMatrix, CVector};
use qstate_core::random::{derive_seed, random_pure_with, rng_from_seed};
use qstate_core::{DensityMatrix, Dims, Ensemble, EnsembleKind, PureState};

use crate::error::{LabError, Result};

pub const STATE_NAMES: &[&str] = &[
    "singlet",
    "product",
    "classically_correlated",
    "werner",
    "isotropic",
    "tiles",
    "random_separable",
];

#[derive(Debug, Clone, PartialEq)]
pub enum CanonicalName {
    Singlet,
    Product,
    ClassicallyCorrelated,
    Werner { p: f64 },
    Isotropic { p: f64, d: usize },
    Tiles,
    RandomSeparable { k: usize, seed: u64 },
}

impl CanonicalName {
    /// Parses a CLI-style name with optional parameters.
    pub fn parse(
        name: &str,
        p: Option<f64>,
        d: Option<usize>,
        k: Option<usize>,
        seed: Option<u64>,
    ) -> Result<Self> {
        match name {
            "singlet" => Ok(Self::Singlet),
            "product" => Ok(Self::Product),
            "classically_correlated" | "classically-correlated" | "cc" => {
                Ok(Self::ClassicallyCorrelated)
            }
            "werner" => Ok(Self::Werner {
                p: p.ok_or_else(|| {
                    LabError::InvalidArgument("werner requires --p".into())
                })?,
            }),
            "isotropic" => Ok(Self::Isotropic {
                p: p.ok_or_else(|| {
                    LabError::InvalidArgument("isotropic requires --p".into())
                })?,
                d: d.unwrap_or(3),
            }),
            "tiles" => Ok(Self::Tiles),
            "random_separable" | "random-separable" => Ok(Self::RandomSeparable {
                k: k.unwrap_or(4),
                seed: seed.unwrap_or(0),
            }),
            other => Err(LabError::UnknownState {
                name: other.into(),
                available: STATE_NAMES.join(", "),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CanonicalState {
    pub state: DensityMatrix,
    /// Explicit decomposition witnessing separability, when one exists by
    /// construction. Passed to roof searches as an initialization.
    pub witness: Option<Ensemble>,
    pub description: String,
}

fn qubit_basis(i: usize) -> DensityMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(i, i)] = creal(1.0);
    DensityMatrix::new_unchecked(Dims::new(vec![2]).unwrap(), m)
}

/// The five tiles product vectors on 3 (x) 3; the complement of their span
/// holds no product vector, which is what makes (I - sum)/4 entangled while
/// staying PPT.
fn tiles_vectors() -> Vec<CVector> {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let third = 1.0 / 3.0;
    let sparse = |entries: &[(usize, f64)]| {
        let mut v = CVector::zeros(9);
        for &(i, a) in entries {
            v[i] = creal(a);
        }
        v
    };
    vec![
        // |0> (x) (|0> - |1>)/sqrt(2)
        sparse(&[(0, s2), (1, -s2)]),
        // (|0> - |1>)/sqrt(2) (x) |2>
        sparse(&[(2, s2), (5, -s2)]),
        // |2> (x) (|1> - |2>)/sqrt(2)
        sparse(&[(7, s2), (8, -s2)]),
        // (|1> - |2>)/sqrt(2) (x) |0>
        sparse(&[(3, s2), (6, -s2)]),
        // (|0>+|1>+|2>)(|0>+|1>+|2>)/3
        sparse(&(0..9).map(|i| (i, third)).collect::<Vec<_>>()),
    ]
}

pub fn tiles_state() -> DensityMatrix {
    let mut mat = CMatrix::identity(9, 9);
    for v in tiles_vectors() {
        mat -= &v * v.adjoint();
    }
    mat /= creal(4.0);
    DensityMatrix::new_unchecked(Dims::new(vec![3, 3]).unwrap(), mat)
}

/// Normalized mixture of `k` Haar-random pure product states with
/// exponential-weight mixing; the decomposition is returned as the witness.
pub fn random_separable(k: usize, seed: u64) -> Result<CanonicalState> {
    if k < 1 {
        return Err(LabError::InvalidArgument("k must be >= 1".into()));
    }
    let qubit = Dims::new(vec![2]).unwrap();
    let mut weights = Vec::with_capacity(k);
    let mut members = Vec::with_capacity(k);
    for i in 0..k {
        let mut rng = rng_from_seed(derive_seed(seed, &[0x53_4550, i as u64]));
        let a = random_pure_with(&qubit, &mut rng);
        let b = random_pure_with(&qubit, &mut rng);
        members.push(a.to_density().tensor(&b.to_density()));
        let u: f64 = rand::Rng::random_range(&mut rng, 1e-6..1.0f64);
        weights.push(-u.ln());
    }
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut mat = CMatrix::zeros(4, 4);
    for (w, m) in weights.iter().zip(members.iter()) {
        mat += m.matrix().scale(*w);
    }
    let state = DensityMatrix::new_unchecked(Dims::new(vec![2, 2]).unwrap(), mat);
    let witness = Ensemble::new(weights, members, EnsembleKind::PureOnly, &state)
        .map_err(LabError::State)?;
    Ok(CanonicalState {
        state,
        witness: Some(witness),
        description: format!("mixture of {k} random product states (seed {seed})"),
    })
}

pub fn canonical_state(name: &CanonicalName) -> Result<CanonicalState> {
    match name {
        CanonicalName::Singlet => Ok(CanonicalState {
            state: PureState::singlet().to_density(),
            witness: None,
            description: "two-qubit singlet".into(),
        }),
        CanonicalName::Product => {
            let state = qubit_basis(0).tensor(&qubit_basis(0));
            let witness = Ensemble::new(
                vec![1.0],
                vec![state.clone()],
                EnsembleKind::PureOnly,
                &state,
            )
            .map_err(LabError::State)?;
            Ok(CanonicalState {
                state,
                witness: Some(witness),
                description: "|00><00| product state".into(),
            })
        }
        CanonicalName::ClassicallyCorrelated => {
            let m0 = qubit_basis(0).tensor(&qubit_basis(0));
            let m1 = qubit_basis(1).tensor(&qubit_basis(1));
            let mut mat = CMatrix::zeros(4, 4);
            mat += m0.matrix().scale(0.5);
            mat += m1.matrix().scale(0.5);
            let state = DensityMatrix::new_unchecked(Dims::new(vec![2, 2]).unwrap(), mat);
            let witness = Ensemble::new(
                vec![0.5, 0.5],
                vec![m0, m1],
                EnsembleKind::PureOnly,
                &state,
            )
            .map_err(LabError::State)?;
            Ok(CanonicalState {
                state,
                witness: Some(witness),
                description: "(|00><00| + |11><11|)/2".into(),
            })
        }
        CanonicalName::Werner { p } => Ok(CanonicalState {
            state: measures::werner_two_qubit(*p)?,
            witness: None,
            description: format!("werner mixture p={p}"),
        }),
        CanonicalName::Isotropic { p, d } => {
            let d = *d;
            if d < 2 {
                return Err(LabError::InvalidArgument("isotropic needs d >= 2".into()));
            }
            let lo = -1.0 / ((d * d - 1) as f64);
            if !(lo..=1.0).contains(p) {
                return Err(LabError::InvalidArgument(format!(
                    "isotropic parameter {p} outside [{lo:.4}, 1]"
                )));
            }
            let dd = d * d;
            let mut phi = CVector::zeros(dd);
            for i in 0..d {
                phi[i * d + i] = creal(1.0 / (d as f64).sqrt());
            }
            let mut mat = CMatrix::identity(dd, dd).scale((1.0 - p) / dd as f64);
            mat += (&phi * phi.adjoint()).scale(*p);
            Ok(CanonicalState {
                state: DensityMatrix::new_unchecked(Dims::new(vec![d, d]).unwrap(), mat),
                witness: None,
                description: format!("isotropic p={p} on {d}x{d}"),
            })
        }
        CanonicalName::Tiles => Ok(CanonicalState {
            state: tiles_state(),
            witness: None,
            description: "3x3 unextendible-product-basis complement state".into(),
        }),
        CanonicalName::RandomSeparable { k, seed } => random_separable(*k, *seed),
    }
}
