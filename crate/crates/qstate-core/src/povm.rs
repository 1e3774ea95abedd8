//! POVMs stored as effect operators E_i = A_i^dag A_i.
//!
//! Only effects are kept: every quantity used downstream (outcome
//! probabilities, post-measurement states of the unmeasured side) depends on
//! the effects alone, which removes the Kraus gauge freedom from the
//! optimizers.

use crate::error::{Result, StateError};
use crate::linalg::{czero, eigvalsh, hermiticity_deviation, max_abs_diff, CMatrix};

/// Tolerances for effect PSD checks and completeness (sum to identity).
pub const EFFECT_PSD_TOL: f64 = 1e-10;
pub const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    effects: Vec<CMatrix>,
}

impl Povm {
    pub fn new(effects: Vec<CMatrix>) -> Result<Self> {
        if effects.is_empty() {
            return Err(StateError::InvalidPovm("no effects".into()));
        }
        let dim = effects[0].nrows();
        for (i, e) in effects.iter().enumerate() {
            if e.nrows() != dim || e.ncols() != dim {
                return Err(StateError::InvalidPovm(format!(
                    "effect {i} is {}x{}, expected {dim}x{dim}",
                    e.nrows(),
                    e.ncols()
                )));
            }
            let dev = hermiticity_deviation(e);
            if dev > EFFECT_PSD_TOL {
                return Err(StateError::InvalidPovm(format!(
                    "effect {i} is not Hermitian (max dev {dev:.3e})"
                )));
            }
            let min_eig = eigvalsh(e).last().copied().unwrap_or(0.0);
            if min_eig < -EFFECT_PSD_TOL {
                return Err(StateError::InvalidPovm(format!(
                    "effect {i} has negative eigenvalue {min_eig:.3e}"
                )));
            }
        }
        let mut sum = CMatrix::zeros(dim, dim);
        for e in &effects {
            sum += e;
        }
        let dev = max_abs_diff(&sum, &CMatrix::identity(dim, dim));
        if dev > COMPLETENESS_TOL {
            return Err(StateError::InvalidPovm(format!(
                "effects do not sum to identity (max dev {dev:.3e})"
            )));
        }
        Ok(Self { dim, effects })
    }

    pub fn new_unchecked(effects: Vec<CMatrix>) -> Self {
        let dim = effects.first().map(|e| e.nrows()).unwrap_or(0);
        Self { dim, effects }
    }

    /// Single-outcome POVM {identity}.
    pub fn trivial(dim: usize) -> Self {
        Self {
            dim,
            effects: vec![CMatrix::identity(dim, dim)],
        }
    }

    /// Rank-1 projectors onto the computational basis.
    pub fn computational_basis(dim: usize) -> Self {
        let effects = (0..dim)
            .map(|k| {
                let mut e = CMatrix::zeros(dim, dim);
                e[(k, k)] = crate::linalg::cone();
                e
            })
            .collect();
        Self { dim, effects }
    }

    /// Rank-1 POVM from the rows of an isometry: `iso` is n x d with
    /// orthonormal columns and E_i = row_i^dag row_i.
    pub fn from_isometry_rows(iso: &CMatrix) -> Self {
        let (n, d) = iso.shape();
        let effects = (0..n)
            .map(|i| {
                let mut e = CMatrix::zeros(d, d);
                for a in 0..d {
                    for b in 0..d {
                        e[(a, b)] = iso[(i, a)].conj() * iso[(i, b)];
                    }
                }
                e
            })
            .collect();
        Self { dim: d, effects }
    }

    /// General POVM from an (n*r) x r isometry split into n blocks of r rows:
    /// E_i = B_i^dag B_i. Every POVM on C^r arises this way.
    pub fn from_isometry_blocks(iso: &CMatrix, n_outcomes: usize) -> Result<Self> {
        let r = iso.ncols();
        if iso.nrows() != n_outcomes * r {
            return Err(StateError::InvalidPovm(format!(
                "block isometry has {} rows, expected {} x {}",
                iso.nrows(),
                n_outcomes,
                r
            )));
        }
        let effects = (0..n_outcomes)
            .map(|i| {
                let block = iso.rows(i * r, r);
                block.adjoint() * block
            })
            .collect();
        Ok(Self { dim: r, effects })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn effects(&self) -> &[CMatrix] {
        &self.effects
    }

    /// Re-runs the constructor checks.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.effects.clone()).map(|_| ())
    }

    /// Max deviation of the effect sum from identity.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        for e in &self.effects {
            sum += e;
        }
        max_abs_diff(&sum, &CMatrix::identity(self.dim, self.dim))
    }
}

/// A zero matrix convenience used when padding effect lists.
pub fn zero_effect(dim: usize) -> CMatrix {
    CMatrix::from_element(dim, dim, czero())
}
