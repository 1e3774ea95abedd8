//! Mixed convex roofs of the directed classical correlations and the
//! finite-copy entanglement-cost lower-bound chain built on them.

use qstate_core::random::derive_seed;
use qstate_core::{DensityMatrix, Ensemble, EnsembleKind};
use roof_optimizer::{minimize_ensemble_average, BoundDirection, OptimizerConfig};

use crate::classical::{classical_correlation_with_outcomes, MeasuredSide};
use crate::cut::Bipartition;
use crate::error::{MeasureError, Result};
use crate::result::{MeasureResult, Witness};

const NESTED_STREAM_TAG: u64 = 0x4e45_5354; // "NEST"

/// Which directed correlation is averaged under the roof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoofVariant {
    MeasureLeft,
    MeasureRight,
    /// max of both directions per member.
    Max,
}

/// Budget for the per-member correlation evaluations inside a roof search.
/// Restarts shrink to a quarter (at least 4) and iterations to a tenth so
/// the nested cost stays bounded; the nested POVM search uses a projective
/// outcome budget. Nested values are still lower bounds, so the composite
/// roof value is a heuristic estimate of an upper bound.
fn nested_config(config: &OptimizerConfig) -> OptimizerConfig {
    OptimizerConfig {
        restarts: (config.restarts / 4).max(4),
        max_iterations: (config.max_iterations / 10).max(200),
        tolerance: config.tolerance,
        ensemble_size: config.ensemble_size,
        seed: derive_seed(config.seed, &[NESTED_STREAM_TAG]),
    }
}

fn member_correlation(
    member: &DensityMatrix,
    cut: &Bipartition,
    variant: RoofVariant,
    nested: &OptimizerConfig,
) -> (f64, bool) {
    let eval = |side: MeasuredSide| {
        let group = match side {
            MeasuredSide::Left => cut.left(),
            MeasuredSide::Right => cut.right(),
        };
        let d: usize = group
            .iter()
            .map(|&f| member.dims().factors()[f])
            .product();
        let r = classical_correlation_with_outcomes(member, cut, side, d, nested)
            .expect("member correlation cannot fail on validated cut");
        (r.value, r.diagnostics.converged)
    };
    match variant {
        RoofVariant::MeasureLeft => eval(MeasuredSide::Left),
        RoofVariant::MeasureRight => eval(MeasuredSide::Right),
        RoofVariant::Max => {
            let (vl, cl) = eval(MeasuredSide::Left);
            let (vr, cr) = eval(MeasuredSide::Right);
            (vl.max(vr), cl && cr)
        }
    }
}

/// Mixed convex roof of a directed classical correlation: minimizes the
/// ensemble average of the per-member correlation over decompositions of
/// `rho`. The trivial one-member ensemble is always among the starts;
/// caller-supplied decompositions (witnesses) join them. Per-member values
/// are themselves lower bounds from a nested search, so the reported value
/// is a heuristic estimate of an upper bound; per-member convergence flags
/// ride along in the diagnostics.
pub fn correlation_roof(
    rho: &DensityMatrix,
    cut: &Bipartition,
    variant: RoofVariant,
    config: &OptimizerConfig,
    inits: &[Ensemble],
) -> Result<MeasureResult> {
    rho.regroup(cut.left(), cut.right())?;
    let nested = nested_config(config);
    let cut_for_f = cut.clone();
    let f = move |m: &DensityMatrix| member_correlation(m, &cut_for_f, variant, &nested).0;
    let opt = minimize_ensemble_average(f, rho, EnsembleKind::Mixed, config, inits)?;

    let nested = nested_config(config);
    let member_converged: Vec<bool> = opt
        .ensemble
        .members()
        .iter()
        .map(|m| member_correlation(m, cut, variant, &nested).1)
        .collect();
    let mut diagnostics = opt.diagnostics;
    diagnostics.member_converged = Some(member_converged);

    Ok(MeasureResult {
        value: opt.value,
        direction: BoundDirection::Upper,
        witness: Some(Witness::Ensemble(opt.ensemble)),
        diagnostics,
    })
}

/// Finite-copy chain value for the entanglement-cost lower bound:
/// per-copy formation cost of n copies is at least (n-1)/n times the
/// correlation roof, which the limit n -> infinity turns into the roof
/// itself.
#[derive(Debug, Clone)]
pub struct CostChainReport {
    pub copies: u32,
    pub roof_estimate: MeasureResult,
    /// (n-1)/n * roof value.
    pub chain_value: f64,
    /// n -> infinity value, i.e. the roof estimate itself.
    pub limit_value: f64,
    pub note: &'static str,
}

pub const COST_CHAIN_NOTE: &str = "estimate: the roof value bounds its infimum from above, \
so chain_value is a heuristic estimate of the cost lower bound, not a certificate";

pub fn cost_lower_bound_chain(
    rho: &DensityMatrix,
    cut: &Bipartition,
    copies: u32,
    config: &OptimizerConfig,
    inits: &[Ensemble],
) -> Result<CostChainReport> {
    if copies < 1 {
        return Err(MeasureError::InvalidArgument(
            "copies must be >= 1".into(),
        ));
    }
    let roof = correlation_roof(rho, cut, RoofVariant::Max, config, inits)?;
    let fraction = (copies - 1) as f64 / copies as f64;
    Ok(CostChainReport {
        copies,
        chain_value: fraction * roof.value,
        limit_value: roof.value,
        roof_estimate: roof,
        note: COST_CHAIN_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qstate_core::PureState;

    fn cut01() -> Bipartition {
        Bipartition::new(vec![0], vec![1], 2).unwrap()
    }

    fn config() -> OptimizerConfig {
        OptimizerConfig::default()
            .with_restarts(4)
            .with_max_iterations(300)
            .with_seed(21)
            .with_ensemble_size(4)
    }

    #[test]
    fn roof_of_singlet_is_one_bit() {
        let rho = PureState::singlet().to_density();
        let r = correlation_roof(&rho, &cut01(), RoofVariant::Max, &config(), &[]).unwrap();
        assert!((r.value - 1.0).abs() < 2e-3, "got {}", r.value);
        assert!(r.value <= 1.0);
        assert_eq!(r.direction, BoundDirection::Upper);
        assert!(r.diagnostics.member_converged.is_some());
    }

    #[test]
    fn chain_arithmetic() {
        let rho = PureState::singlet().to_density();
        let report = cost_lower_bound_chain(&rho, &cut01(), 10, &config(), &[]).unwrap();
        assert!((report.chain_value - 0.9 * report.roof_estimate.value).abs() < 1e-12);
        assert!((report.limit_value - report.roof_estimate.value).abs() < 1e-12);

        let one = cost_lower_bound_chain(&rho, &cut01(), 1, &config(), &[]).unwrap();
        assert_eq!(one.chain_value, 0.0);
        assert!(cost_lower_bound_chain(&rho, &cut01(), 0, &config(), &[]).is_err());
    }
}
