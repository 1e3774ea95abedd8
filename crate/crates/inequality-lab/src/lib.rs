//! Numeric verification of the correlation inequality chain over canonical
//! and randomly sampled states: the purification duality identity, the
//! four-partite formation bounds, the finite-copy cost chain and the
//! local-cloning gap. Reports carry per-sample slack with structural
//! bound-direction soundness.

pub mod checks;
pub mod error;
pub mod fuzz;
pub mod report;
pub mod states;

pub use checks::{
    check_duality, check_lemma1, check_main_inequality, cloning_gap, CloningReport, CLONING_NOTE,
};
pub use error::{LabError, Result};
pub use fuzz::{fuzz_campaign, CheckKind};
pub use report::{InequalityRecord, InequalityReport, TermValue, VIOLATION_TOL};
pub use states::{canonical_state, random_separable, tiles_state, CanonicalName, CanonicalState, STATE_NAMES};
