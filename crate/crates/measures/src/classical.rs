//! Directed classical correlations of a bipartite cut: the entropy reduction
//! of one group achievable by the best POVM on the other,
//! max over POVMs of S(rho_unmeasured) - sum_i p_i S(rho_unmeasured | i).
//!
//! Search values are certified lower bounds of the true maximum; the
//! conditional term can never exceed S(rho_unmeasured) (concavity), so the
//! true quantity is nonnegative and the numeric value is clamped at 0 with
//! the trivial single-outcome POVM as fallback witness.

use qstate_core::{DensityMatrix, Povm};
use roof_optimizer::{optimize_povm, BoundDirection, OptimizerConfig};

use crate::cut::Bipartition;
use crate::error::Result;
use crate::result::{MeasureResult, Witness};

/// Which cut group the POVM acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasuredSide {
    Left,
    Right,
}

pub fn classical_correlation(
    rho: &DensityMatrix,
    cut: &Bipartition,
    side: MeasuredSide,
    config: &OptimizerConfig,
) -> Result<MeasureResult> {
    let d_meas = measured_dim(rho, cut, side)?;
    classical_correlation_with_outcomes(rho, cut, side, d_meas * d_meas, config)
}

/// Dimension of the measured group after regrouping.
fn measured_dim(rho: &DensityMatrix, cut: &Bipartition, side: MeasuredSide) -> Result<usize> {
    let group = match side {
        MeasuredSide::Left => cut.left(),
        MeasuredSide::Right => cut.right(),
    };
    let mut d = 1usize;
    for &f in group {
        d *= rho.dims().factor(f)?;
    }
    Ok(d)
}

/// Same measure with an explicit outcome budget for the POVM search. Any
/// budget yields a valid lower bound; `local_dim^2` rank-1 outcomes suffice
/// for the true maximum.
pub fn classical_correlation_with_outcomes(
    rho: &DensityMatrix,
    cut: &Bipartition,
    side: MeasuredSide,
    n_outcomes: usize,
    config: &OptimizerConfig,
) -> Result<MeasureResult> {
    let bip = rho.regroup(cut.left(), cut.right())?;
    let (measured, other) = match side {
        MeasuredSide::Left => (0usize, 1usize),
        MeasuredSide::Right => (1usize, 0usize),
    };
    let d_meas = bip.dims().factor(measured)?;
    let s_other = bip.partial_trace(&[other])?.von_neumann_entropy();

    let objective = move |povm: &Povm| -> f64 {
        let outcomes = bip
            .measure_subsystem(povm, measured)
            .expect("measurement dims were validated");
        let conditional: f64 = outcomes
            .iter()
            .map(|(p, state)| p * state.von_neumann_entropy())
            .sum();
        s_other - conditional
    };

    let opt = optimize_povm(objective, d_meas, n_outcomes, config)?;
    if opt.value <= 0.0 {
        return Ok(MeasureResult {
            value: 0.0,
            direction: BoundDirection::Lower,
            witness: Some(Witness::Povm(Povm::trivial(d_meas))),
            diagnostics: opt.diagnostics,
        });
    }
    Ok(MeasureResult {
        value: opt.value,
        direction: BoundDirection::Lower,
        witness: Some(Witness::Povm(opt.povm)),
        diagnostics: opt.diagnostics,
    })
}

/// max over both measured sides; the witness comes from the winning side.
pub fn classical_correlation_max(
    rho: &DensityMatrix,
    cut: &Bipartition,
    config: &OptimizerConfig,
) -> Result<MeasureResult> {
    let left = classical_correlation(rho, cut, MeasuredSide::Left, config)?;
    let right = classical_correlation(rho, cut, MeasuredSide::Right, config)?;
    Ok(if left.value >= right.value { left } else { right })
}
