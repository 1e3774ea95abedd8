//! Correlation and entanglement measures on small-dimensional states:
//! entanglement entropy, directed classical correlations, entanglement of
//! formation (closed form and numeric roof), correlation roofs and the
//! finite-copy entanglement-cost lower-bound chain.
//!
//! Every value carries a bound direction: search-based maximizations report
//! lower bounds, roof minimizations report upper bounds, closed forms are
//! exact.

pub mod classical;
pub mod cut;
pub mod entropy;
pub mod eof;
pub mod error;
pub mod result;
pub mod roof_measures;

pub use classical::{classical_correlation, classical_correlation_max, MeasuredSide};
pub use cut::Bipartition;
pub use entropy::entanglement_entropy;
pub use eof::{binary_entropy, concurrence_two_qubit, eof_exact_two_qubit, eof_numeric, werner_two_qubit};
pub use error::{MeasureError, Result};
pub use result::{MeasureResult, Witness, WitnessJson};
pub use roof_measures::{
    correlation_roof, cost_lower_bound_chain, CostChainReport, RoofVariant, COST_CHAIN_NOTE,
};
