//! Single-state verifiers for the inequality chain.
//!
//! Soundness discipline: every term carries its bound direction and the
//! record flag is derived from them. Two-qubit marginals use the exact
//! formation formula so right-hand sides stay exact-or-lower; larger
//! marginals fall back to the numeric roof and the record is flagged
//! accordingly.

use measures::{
    classical_correlation, classical_correlation_max, correlation_roof, entanglement_entropy,
    eof_exact_two_qubit, eof_numeric, Bipartition, MeasuredSide, RoofVariant,
};
use qstate_core::{DensityMatrix, PureState};
use roof_optimizer::{BoundDirection, OptimizerConfig};

use crate::error::{LabError, Result};
use crate::report::{InequalityRecord, TermValue};

/// Marginals at least this pure are treated as rank-1 for soundness routing.
const PURITY_EXACT_TOL: f64 = 1e-9;

/// Ensemble sizes picked by the caller target the roof term; formation
/// roofs over joint states must size themselves from the state's rank.
fn auto_sized(config: &OptimizerConfig) -> OptimizerConfig {
    let mut c = *config;
    c.ensemble_size = roof_optimizer::EnsembleSize::Auto;
    c
}

fn formation_term(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
) -> Result<TermValue> {
    if rho.dims().factors() == [2, 2] {
        Ok(TermValue::exact(eof_exact_two_qubit(rho)?.value))
    } else {
        let cut = Bipartition::new(vec![0], vec![1], rho.dims().len())?;
        let r = eof_numeric(rho, &cut, &auto_sized(config), &[])?;
        Ok(TermValue::new(r.value, r.direction))
    }
}

/// Purification-duality identity on a tripartite pure state:
/// S(rho_A) = E_f(rho_AC) + C_measure-on-B(rho_AB). The left side and the
/// formation term are exact (two-qubit A,C), the correlation term is a
/// search lower bound, so slack >= 0 with slack -> 0 as the search
/// converges.
pub fn check_duality(phi: &PureState, config: &OptimizerConfig) -> Result<InequalityRecord> {
    if phi.dims().len() != 3 {
        return Err(LabError::InvalidArgument(format!(
            "duality check needs a tripartite pure state, got dims {}",
            phi.dims()
        )));
    }
    let rho = phi.to_density();
    let s_a = rho.partial_trace(&[0])?.von_neumann_entropy();
    let rho_ab = rho.partial_trace(&[0, 1])?;
    let rho_ac = rho.partial_trace(&[0, 2])?;

    let ef = formation_term(&rho_ac, config)?;
    let cut = Bipartition::new(vec![0], vec![1], 2)?;
    let c = classical_correlation(&rho_ab, &cut, MeasuredSide::Right, config)?;

    Ok(InequalityRecord::from_terms(
        format!("duality dims={}", phi.dims()),
        vec![TermValue::exact(s_a)],
        vec![ef, TermValue::new(c.value, c.direction)],
    ))
}

/// Four-partite pure-state bound: the formation entropy across AA'|BB'
/// dominates E_f(rho_AB) + C(rho_A'B'). Exact on the left (pure state),
/// exact-or-lower on the right, hence a sound one-sided test.
pub fn check_lemma1(phi: &PureState, config: &OptimizerConfig) -> Result<InequalityRecord> {
    if phi.dims().len() != 4 {
        return Err(LabError::InvalidArgument(format!(
            "four-partite check needs dims [dA,dA',dB,dB'], got {}",
            phi.dims()
        )));
    }
    let cut = Bipartition::new(vec![0, 1], vec![2, 3], 4)?;
    let lhs = entanglement_entropy(phi, &cut)?;
    let rho = phi.to_density();
    let rho_ab = rho.partial_trace(&[0, 2])?;
    let rho_apbp = rho.partial_trace(&[1, 3])?;

    let ef = formation_term(&rho_ab, config)?;
    let cut2 = Bipartition::new(vec![0], vec![1], 2)?;
    let c = classical_correlation_max(&rho_apbp, &cut2, config)?;

    Ok(InequalityRecord::from_terms(
        format!("four-partite pure dims={}", phi.dims()),
        vec![TermValue::exact(lhs)],
        vec![ef, TermValue::new(c.value, c.direction)],
    ))
}

/// Mixed four-partite bound: E_f(rho_AA':BB') >= E_f(rho_AB) + roof(rho_A'B').
/// The left side is a numeric roof (upper: sound on the left). The roof term
/// on the right is also an upper bound, so the record is unsound unless the
/// A'B' marginal is pure (exact value) or the caller supplies a certified
/// lower bound for it. Unsound records are still reported as corroborating
/// evidence.
pub fn check_main_inequality(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
    roof_lower_certificate: Option<f64>,
) -> Result<InequalityRecord> {
    if rho.dims().len() != 4 {
        return Err(LabError::InvalidArgument(format!(
            "four-partite check needs dims [dA,dA',dB,dB'], got {}",
            rho.dims()
        )));
    }
    let cut = Bipartition::new(vec![0, 1], vec![2, 3], 4)?;
    let lhs = eof_numeric(rho, &cut, &auto_sized(config), &[])?;

    let rho_ab = rho.partial_trace(&[0, 2])?;
    let rho_apbp = rho.partial_trace(&[1, 3])?;
    let ef = formation_term(&rho_ab, config)?;

    let cut2 = Bipartition::new(vec![0], vec![1], 2)?;
    let roof_term = if let Some(cert) = roof_lower_certificate {
        TermValue::new(cert, BoundDirection::Lower)
    } else if rho_apbp.is_pure(PURITY_EXACT_TOL) {
        // pure marginal: the roof collapses to the entanglement entropy
        TermValue::exact(rho_apbp.partial_trace(&[0])?.von_neumann_entropy())
    } else {
        let g = correlation_roof(&rho_apbp, &cut2, RoofVariant::Max, config, &[])?;
        TermValue::new(g.value, g.direction)
    };

    Ok(InequalityRecord::from_terms(
        format!("four-partite mixed dims={}", rho.dims()),
        vec![TermValue::new(lhs.value, lhs.direction)],
        vec![ef, roof_term],
    ))
}

/// Gap between the formation cost of two copies (across the doubled cut)
/// and one copy. For an entangled input the true gap is strictly positive;
/// numerically the joint term is an upper bound, so a positive reported gap
/// is evidence while equality-or-less is inconclusive.
#[derive(Debug, Clone)]
pub struct CloningReport {
    pub ef_joint: TermValue,
    pub ef_single: TermValue,
    pub gap_bits: f64,
    /// PPT verdict on the input where PPT decides separability (2x2, 2x3);
    /// None for larger dims.
    pub input_entangled: Option<bool>,
    pub note: &'static str,
}

pub const CLONING_NOTE: &str = "gap compares an upper bound (joint) against an exact or upper \
single-copy value: a positive gap is evidence of the cloning obstruction, not a certificate";

pub fn cloning_gap(rho_ab: &DensityMatrix, config: &OptimizerConfig) -> Result<CloningReport> {
    if rho_ab.dims().len() != 2 {
        return Err(LabError::InvalidArgument(format!(
            "cloning gap needs a bipartite state, got dims {}",
            rho_ab.dims()
        )));
    }
    // two copies reordered to [A, A', B, B']
    let joint = rho_ab.tensor(rho_ab).permute_factors(&[0, 2, 1, 3])?;
    let cut = Bipartition::new(vec![0, 1], vec![2, 3], 4)?;
    let joint_r = eof_numeric(&joint, &cut, &auto_sized(config), &[])?;
    let ef_joint = TermValue::new(joint_r.value, joint_r.direction);
    let ef_single = formation_term(rho_ab, config)?;

    let dims = rho_ab.dims().factors();
    let input_entangled = if dims.iter().product::<usize>() <= 6 {
        let (_, min_eig) = rho_ab.partial_transpose(1)?;
        Some(min_eig < -1e-12)
    } else {
        None
    };

    Ok(CloningReport {
        gap_bits: ef_joint.value - ef_single.value,
        ef_joint,
        ef_single,
        input_entangled,
        note: CLONING_NOTE,
    })
}

impl CloningReport {
    /// Record form: joint formation on the left, single-copy on the right.
    pub fn to_record(&self, descriptor: impl Into<String>) -> InequalityRecord {
        InequalityRecord::from_terms(
            descriptor,
            vec![self.ef_joint],
            vec![self.ef_single],
        )
    }
}
