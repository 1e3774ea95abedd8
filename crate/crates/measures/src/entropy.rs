//! Entanglement entropy of pure states across a bipartition.

use qstate_core::PureState;

use crate::cut::Bipartition;
use crate::error::{MeasureError, Result};

/// Entropy of either side's reduction of a pure state; the two sides agree
/// for pure states and this is asserted to 1e-9.
pub fn entanglement_entropy(phi: &PureState, cut: &Bipartition) -> Result<f64> {
    if cut.left().len() + cut.right().len() != phi.dims().len() {
        return Err(MeasureError::InvalidArgument(format!(
            "cut {cut} does not cover the {} factors",
            phi.dims().len()
        )));
    }
    let rho = phi.to_density();
    let s_left = rho.partial_trace(cut.left())?.von_neumann_entropy();
    let s_right = rho.partial_trace(cut.right())?.von_neumann_entropy();
    assert!(
        (s_left - s_right).abs() < 1e-9,
        "reductions of a pure state disagree: {s_left} vs {s_right}"
    );
    Ok(s_left)
}
