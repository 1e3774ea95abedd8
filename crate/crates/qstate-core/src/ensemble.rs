//! Weighted decompositions of a density matrix.

use crate::density::DensityMatrix;
use crate::dims::Dims;
use crate::error::{Result, StateError};
use crate::linalg::CMatrix;

/// |sum of weights - 1| accepted by `new`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Max entrywise deviation of the barycenter from the declared target.
pub const BARYCENTER_TOL: f64 = 1e-9;
/// Members of a pure-only ensemble must have purity within this of 1.
pub const PURITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleKind {
    /// All members are rank-1 density matrices.
    PureOnly,
    /// Members may be mixed (rank-1 members are still allowed).
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    weights: Vec<f64>,
    members: Vec<DensityMatrix>,
    kind: EnsembleKind,
}

impl Ensemble {
    /// Validating constructor. `target` is the state the ensemble claims to
    /// decompose; the weighted average must reproduce it entrywise within
    /// `BARYCENTER_TOL`.
    pub fn new(
        weights: Vec<f64>,
        members: Vec<DensityMatrix>,
        kind: EnsembleKind,
        target: &DensityMatrix,
    ) -> Result<Self> {
        if weights.len() != members.len() || weights.is_empty() {
            return Err(StateError::InvalidEnsemble(format!(
                "{} weights for {} members",
                weights.len(),
                members.len()
            )));
        }
        let mut weights = weights;
        for w in weights.iter_mut() {
            if *w < -WEIGHT_SUM_TOL || !w.is_finite() {
                return Err(StateError::InvalidEnsemble(format!(
                    "negative weight {w}"
                )));
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(StateError::InvalidEnsemble(format!(
                "weights sum to {sum}"
            )));
        }
        for (i, m) in members.iter().enumerate() {
            if m.dims() != target.dims() {
                return Err(StateError::InvalidEnsemble(format!(
                    "member {i} has dims {} but target has {}",
                    m.dims(),
                    target.dims()
                )));
            }
            if kind == EnsembleKind::PureOnly && !m.is_pure(PURITY_TOL) {
                return Err(StateError::InvalidEnsemble(format!(
                    "member {i} of a pure-only ensemble has purity {}",
                    m.purity()
                )));
            }
        }
        let out = Self {
            weights,
            members,
            kind,
        };
        let dev = out.barycenter().max_abs_diff(target);
        if dev > BARYCENTER_TOL {
            return Err(StateError::InvalidEnsemble(format!(
                "barycenter deviates from target by {dev:.3e}"
            )));
        }
        Ok(out)
    }

    pub fn new_unchecked(
        weights: Vec<f64>,
        members: Vec<DensityMatrix>,
        kind: EnsembleKind,
    ) -> Self {
        Self {
            weights,
            members,
            kind,
        }
    }

    /// The one-member decomposition {1, rho}.
    pub fn trivial(rho: DensityMatrix) -> Self {
        let kind = if rho.is_pure(PURITY_TOL) {
            EnsembleKind::PureOnly
        } else {
            EnsembleKind::Mixed
        };
        Self {
            weights: vec![1.0],
            members: vec![rho],
            kind,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[DensityMatrix] {
        &self.members
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        self.weights.iter().copied().zip(self.members.iter())
    }

    /// Weighted average of the members.
    pub fn barycenter(&self) -> DensityMatrix {
        let dims: Dims = self.members[0].dims().clone();
        let d = dims.total();
        let mut acc = CMatrix::zeros(d, d);
        for (w, m) in self.iter() {
            acc += m.matrix().scale(w);
        }
        DensityMatrix::new_unchecked(dims, acc)
    }
}
