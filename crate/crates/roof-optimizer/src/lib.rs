//! Search machinery for the two optimization families the correlation
//! measures need: maximization over POVMs and minimization over ensemble
//! decompositions, plus the constructive Caratheodory reduction.
//!
//! Restarts are independent, derive their random streams from
//! (seed, stratum, index) and may run in parallel; results are deterministic
//! functions of the configuration.

pub mod caratheodory;
pub mod config;
pub mod decompositions;
pub mod perturb;
pub mod povm_search;
pub mod roof;

pub use caratheodory::{caratheodory_reduce, ReducedEnsemble};
pub use config::{BoundDirection, Diagnostics, EnsembleSize, OptError, OptimizerConfig, Result};
pub use decompositions::{
    mixed_ensembles_from_purification, pure_ensembles_from_purification, PurificationBasis,
};
pub use povm_search::{optimize_povm, PovmOptimum};
pub use roof::{minimize_ensemble_average, EnsembleOptimum};
