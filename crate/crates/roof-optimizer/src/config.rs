//! Search configuration and bound-direction bookkeeping.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OptError {
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    State(#[from] qstate_core::StateError),
}

pub type Result<T> = std::result::Result<T, OptError>;

/// Whether the search chooses its own decomposition size or uses a fixed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnsembleSize {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Independent hill-climb starts per search stratum.
    pub restarts: u32,
    /// Proposal budget per climb.
    pub max_iterations: u32,
    /// Objective improvements below this count as converged.
    pub tolerance: f64,
    /// Decomposition size for ensemble searches.
    pub ensemble_size: EnsembleSize,
    /// Base seed; every climb derives its own stream from it.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iterations: 2000,
            tolerance: 1e-8,
            ensemble_size: EnsembleSize::Auto,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(OptError::InvalidConfig("restarts must be >= 1".into()));
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(OptError::InvalidConfig("tolerance must be > 0".into()));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: u32) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_max_iterations(mut self, iters: u32) -> Self {
        self.max_iterations = iters;
        self
    }

    pub fn with_ensemble_size(mut self, size: usize) -> Self {
        self.ensemble_size = EnsembleSize::Fixed(size);
        self
    }
}

/// Records whether a numeric value over- or under-estimates the true
/// quantity. Maximization by search yields `Lower`, minimization by search
/// yields `Upper`, closed forms yield `Exact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundDirection {
    Exact,
    Upper,
    Lower,
}

impl BoundDirection {
    /// A term usable on the left of `lhs >= rhs` without breaking one-sided
    /// soundness.
    pub fn sound_on_lhs(self) -> bool {
        matches!(self, BoundDirection::Exact | BoundDirection::Upper)
    }

    /// A term usable on the right of `lhs >= rhs` without breaking one-sided
    /// soundness.
    pub fn sound_on_rhs(self) -> bool {
        matches!(self, BoundDirection::Exact | BoundDirection::Lower)
    }
}

impl std::fmt::Display for BoundDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BoundDirection::Exact => "exact",
            BoundDirection::Upper => "upper",
            BoundDirection::Lower => "lower",
        };
        write!(f, "{s}")
    }
}

/// Book-keeping attached to every search result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Total number of climbs executed (across strata and restarts).
    pub restarts: u32,
    /// Flat index of the winning climb in deterministic enumeration order.
    pub best_restart: u32,
    /// Whether the winning climb reached its internal convergence criterion.
    pub converged: bool,
    /// Objective evaluations spent in total.
    pub evaluations: u64,
    /// Convergence flags of nested per-member searches, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member_converged: Option<Vec<bool>>,
}

impl Diagnostics {
    pub fn single(converged: bool) -> Self {
        Self {
            restarts: 1,
            best_restart: 0,
            converged,
            evaluations: 1,
            member_converged: None,
        }
    }

    /// For closed-form results that involve no search at all.
    pub fn exact() -> Self {
        Self {
            restarts: 0,
            best_restart: 0,
            converged: true,
            evaluations: 0,
            member_converged: None,
        }
    }
}
