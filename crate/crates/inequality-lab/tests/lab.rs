//! Integration checks: equality structure of the four-partite bound on
//! product pure pairs and report self-consistency.

use inequality_lab::{check_lemma1, fuzz_campaign, CheckKind};
use measures::{entanglement_entropy, Bipartition};
use qstate_core::random::{derive_seed, random_pure};
use qstate_core::Dims;
use roof_optimizer::OptimizerConfig;

#[test]
fn product_of_pure_pairs_hits_the_equality_case() {
    // phi_AB (x) phi_A'B': the bound becomes E1 + E2 >= E1 + C(phi2), so the
    // slack is exactly the correlation-search convergence gap
    let dims = Dims::new(vec![2, 2]).unwrap();
    let config = OptimizerConfig::default().with_seed(9);
    for i in 0..4u64 {
        let phi1 = random_pure(&dims, derive_seed(100, &[i, 0]));
        let phi2 = random_pure(&dims, derive_seed(100, &[i, 1]));
        let joint = phi1.tensor(&phi2).permute_factors(&[0, 2, 1, 3]).unwrap();
        let rec = check_lemma1(&joint, &config).unwrap();
        assert!(rec.sound);
        assert!(
            rec.slack_bits >= -1e-6,
            "pair {i}: slack {}",
            rec.slack_bits
        );
        // slack equals E(phi2) - C_num(phi2) up to rounding: small and
        // nonnegative once the correlation search converges
        let cut = Bipartition::new(vec![0], vec![1], 2).unwrap();
        let e2 = entanglement_entropy(&phi2, &cut).unwrap();
        assert!(
            rec.slack_bits <= (e2 * 1e-2).max(2e-3),
            "pair {i}: slack {} too large for equality case (E2 = {e2})",
            rec.slack_bits
        );
    }
}

#[test]
fn main_inequality_campaign_runs_in_evidence_mode() {
    let config = OptimizerConfig::default()
        .with_restarts(2)
        .with_max_iterations(80)
        .with_ensemble_size(4);
    let report = fuzz_campaign(CheckKind::Main, 2, &[2, 2, 2, 2], 5, &config).unwrap();
    assert_eq!(report.samples, 2);
    // rank-2 four-partite samples have mixed A'B' marginals: evidence-only
    for r in &report.records {
        assert!(!r.sound, "evidence-mode record unexpectedly sound");
        assert!(r.slack_bits.is_finite());
    }
    // unsound records can never count as violations
    assert_eq!(report.violations, 0);
}

#[test]
fn cloning_campaign_compares_joint_against_single_copy() {
    let config = OptimizerConfig::default()
        .with_restarts(2)
        .with_max_iterations(100);
    let report = fuzz_campaign(CheckKind::Cloning, 2, &[2, 2], 8, &config).unwrap();
    assert_eq!(report.samples, 2);
    for r in &report.records {
        assert!(r.sound, "upper-vs-exact comparison is sound");
        // formation of two copies never drops below one copy
        assert!(r.slack_bits >= -1e-6, "slack {}", r.slack_bits);
    }
    assert_eq!(report.violations, 0);
}

#[test]
fn report_aggregates_match_recomputation_from_records() {
    let report = fuzz_campaign(
        CheckKind::Duality,
        5,
        &[2, 2, 2],
        13,
        &OptimizerConfig::default()
            .with_restarts(4)
            .with_max_iterations(300),
    )
    .unwrap();
    let min = report
        .records
        .iter()
        .map(|r| r.slack_bits)
        .fold(f64::INFINITY, f64::min);
    let max = report
        .records
        .iter()
        .map(|r| r.slack_bits)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean: f64 =
        report.records.iter().map(|r| r.slack_bits).sum::<f64>() / report.records.len() as f64;
    assert_eq!(report.min_slack_bits, min);
    assert_eq!(report.max_slack_bits, max);
    assert!((report.mean_slack_bits - mean).abs() < 1e-15);
    let violations = report.records.iter().filter(|r| r.is_violation()).count();
    assert_eq!(report.violations, violations);
    // sample indices are contiguous after sorting
    for (i, r) in report.records.iter().enumerate() {
        assert_eq!(r.sample, i);
    }
}
