//! Pure states as unit-norm amplitude vectors.

use crate::density::{pure_permutation_index_map, DensityMatrix};
use crate::dims::Dims;
use crate::error::{Result, StateError};
use crate::linalg::{creal, czero, CVector};

/// |norm^2 - 1| accepted by `new`.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Dims,
    amps: CVector,
}

impl PureState {
    pub fn new(dims: Dims, amps: CVector) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(StateError::SideMismatch {
                expected: dims.total(),
                got: amps.len(),
            });
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(StateError::NonFinite);
        }
        let n2 = amps.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(StateError::NormNotOne { norm: n2.sqrt() });
        }
        Ok(Self { dims, amps })
    }

    pub fn new_unchecked(dims: Dims, amps: CVector) -> Self {
        debug_assert_eq!(dims.total(), amps.len());
        Self { dims, amps }
    }

    /// Computational basis vector |index> on the given dims.
    pub fn basis(dims: Dims, index: usize) -> Result<Self> {
        let d = dims.total();
        if index >= d {
            return Err(StateError::InvalidArgument(format!(
                "basis index {index} out of range for dimension {d}"
            )));
        }
        let mut amps = CVector::zeros(d);
        amps[index] = creal(1.0);
        Ok(Self { dims, amps })
    }

    /// Two-qubit singlet (|01> - |10>)/sqrt(2).
    pub fn singlet() -> Self {
        let dims = Dims::new(vec![2, 2]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = CVector::zeros(4);
        amps[1] = creal(s);
        amps[2] = creal(-s);
        Self { dims, amps }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let n = self.amps.len() * other.amps.len();
        let mut amps = CVector::zeros(n);
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * other.amps.len() + j] = a * b;
            }
        }
        PureState {
            dims: self.dims.concat(other.dims()),
            amps,
        }
    }

    /// Reorders tensor factors: new factor `i` is old factor `perm[i]`.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<PureState> {
        let map = pure_permutation_index_map(&self.dims, perm)?;
        let mut amps = CVector::from_element(self.amps.len(), czero());
        for (old, &new) in map.iter().enumerate() {
            amps[new] = self.amps[old];
        }
        let new_factors: Vec<usize> = perm.iter().map(|&p| self.dims.factors()[p]).collect();
        Ok(PureState {
            dims: Dims::new(new_factors)?,
            amps,
        })
    }
}
