//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its headline numbers (run with --nocapture to see them).
//!
//! Criteria 1-10 exercise the library stack directly; criterion 11 drives
//! the binary and compares report files byte for byte.

use std::time::Instant;

use inequality_lab::{
    check_lemma1, cloning_gap, fuzz_campaign, random_separable, tiles_state, CheckKind,
};
use measures::{
    classical_correlation_max, correlation_roof, cost_lower_bound_chain, entanglement_entropy,
    eof_exact_two_qubit, eof_numeric, Bipartition, RoofVariant,
};
use qstate_core::random::{derive_seed, random_density, random_pure};
use qstate_core::{Dims, Povm, PureState};
use rayon::prelude::*;
use roof_optimizer::{
    caratheodory_reduce, mixed_ensembles_from_purification, BoundDirection, OptimizerConfig,
};

fn cut01() -> Bipartition {
    Bipartition::new(vec![0], vec![1], 2).unwrap()
}

fn pass(criterion: u32, started: Instant, detail: String) {
    println!(
        "ACCEPTANCE {criterion:02} PASS [{:.1}s] {detail}",
        started.elapsed().as_secs_f64()
    );
}

/// Criterion 1: Purification-duality identity on 50 Haar-random 2x2x2 pure states,
/// seed 1: slack = S(rho_A) - E_f_exact(rho_AC) - C_num(rho_AB) within
/// [0, 1e-3] bits for every sample.
#[test]
fn criterion_01_duality_identity() {
    let t = Instant::now();
    let report = fuzz_campaign(
        CheckKind::Duality,
        50,
        &[2, 2, 2],
        1,
        &OptimizerConfig::default(),
    )
    .unwrap();
    assert_eq!(report.samples, 50);
    for r in &report.records {
        assert!(r.sound, "sample {} not sound", r.sample);
        assert!(
            r.slack_bits >= 0.0 && r.slack_bits <= 1e-3,
            "sample {} slack {} outside [0, 1e-3]",
            r.sample,
            r.slack_bits
        );
    }
    pass(
        1,
        t,
        format!(
            "50 samples, slack in [{:.2e}, {:.2e}]",
            report.min_slack_bits, report.max_slack_bits
        ),
    );
}

/// Criterion 2: Four-partite pure-state bound, one-sided-sound fuzz: 100 Haar-random
/// 4-qubit pure states, seed 42, zero records with slack < -1e-6.
#[test]
fn criterion_02_four_partite_fuzz() {
    let t = Instant::now();
    let report = fuzz_campaign(
        CheckKind::Lemma1,
        100,
        &[2, 2, 2, 2],
        42,
        &OptimizerConfig::default(),
    )
    .unwrap();
    assert_eq!(report.samples, 100);
    assert_eq!(report.sound_records, 100);
    assert_eq!(
        report.violations, 0,
        "violations with min slack {}",
        report.min_slack_bits
    );
    assert!(report.min_slack_bits >= -1e-6);
    pass(
        2,
        t,
        format!(
            "100 samples, 0 violations, min slack {:.2e}",
            report.min_slack_bits
        ),
    );
}

/// Criterion 3: Equality case: for singlet_AB (x) singlet_A'B' the four-partite bound
/// is tight; slack within [-1e-6, 2e-3].
#[test]
fn criterion_03_equality_case() {
    let t = Instant::now();
    let phi = PureState::singlet()
        .tensor(&PureState::singlet())
        .permute_factors(&[0, 2, 1, 3])
        .unwrap();
    let rec = check_lemma1(&phi, &OptimizerConfig::default().with_seed(3)).unwrap();
    assert!(rec.sound);
    assert!(
        rec.slack_bits >= -1e-6 && rec.slack_bits <= 2e-3,
        "slack {} outside [-1e-6, 2e-3]",
        rec.slack_bits
    );
    pass(
        3,
        t,
        format!(
            "lhs {:.6}, rhs {:.6}, slack {:.2e}",
            rec.lhs_bits, rec.rhs_bits, rec.slack_bits
        ),
    );
}

/// Criterion 4: Separable states certify a vanishing roof: 20 random 4-term separable
/// mixtures in 2x2 with their decomposition witness as initialization give
/// roof values <= 1e-3 each.
#[test]
fn criterion_04_separable_roof_vanishes() {
    let t = Instant::now();
    let config = OptimizerConfig::default()
        .with_restarts(2)
        .with_max_iterations(60)
        .with_ensemble_size(6);
    let worst = (0..20u64)
        .into_par_iter()
        .map(|i| {
            let built = random_separable(4, derive_seed(4, &[i])).unwrap();
            let witness = built.witness.clone().unwrap();
            let g = correlation_roof(
                &built.state,
                &cut01(),
                RoofVariant::Max,
                &config.with_seed(derive_seed(4, &[i, 99])),
                &[witness],
            )
            .unwrap();
            assert!(
                g.value <= 1e-3,
                "separable state {i} got roof {}",
                g.value
            );
            g.value
        })
        .reduce(|| 0.0f64, f64::max);
    pass(4, t, format!("20 witnessed separable states, max roof {worst:.2e}"));
}

/// Criterion 5: Oracle equivalence: on 50 random two-qubit mixed states (rank <= 4)
/// the numeric formation roof sits within [-1e-6, 5e-3] of the closed form.
#[test]
fn criterion_05_formation_oracle_equivalence() {
    let t = Instant::now();
    let dims = Dims::new(vec![2, 2]).unwrap();
    let config = OptimizerConfig::default();
    let gaps: Vec<f64> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let rho = random_density(&dims, 4, derive_seed(5, &[i])).unwrap();
            let exact = eof_exact_two_qubit(&rho).unwrap().value;
            let numeric = eof_numeric(
                &rho,
                &cut01(),
                &config.with_seed(derive_seed(5, &[i, 99])),
                &[],
            )
            .unwrap()
            .value;
            let gap = numeric - exact;
            assert!(
                (-1e-6..=5e-3).contains(&gap),
                "state {i}: numeric {numeric} vs exact {exact} (gap {gap})"
            );
            gap
        })
        .collect();
    let max_gap = gaps.iter().cloned().fold(f64::MIN, f64::max);
    let min_gap = gaps.iter().cloned().fold(f64::MAX, f64::min);
    pass(
        5,
        t,
        format!("50 states, numeric-exact gap in [{min_gap:.2e}, {max_gap:.2e}]"),
    );
}

/// Criterion 6: Caratheodory reduction: 20 random 30-member decompositions of random
/// two-qubit states reduce to <= 17 members with barycenter and weighted
/// value average preserved within 1e-10.
#[test]
fn criterion_06_caratheodory_reduction() {
    let t = Instant::now();
    let dims = Dims::new(vec![2, 2]).unwrap();
    let mut max_members = 0usize;
    let mut worst_drift: f64 = 0.0;
    for i in 0..20u64 {
        let rho = random_density(&dims, 3, derive_seed(6, &[i])).unwrap();
        let r = rho.rank();
        let mut rng = qstate_core::random::rng_from_seed(derive_seed(6, &[i, 1]));
        let blocks = qstate_core::random::random_isometry(30 * r, r, &mut rng);
        let povm = Povm::from_isometry_blocks(&blocks, 30).unwrap();
        let ens = mixed_ensembles_from_purification(&rho, &povm).unwrap();
        assert!(ens.len() > 17, "sampled decomposition too small");
        let values: Vec<f64> = ens
            .members()
            .iter()
            .map(|m| m.von_neumann_entropy())
            .collect();
        let avg_before: f64 = ens.weights().iter().zip(&values).map(|(w, v)| w * v).sum();
        let bary_before = ens.barycenter();

        let out = caratheodory_reduce(&ens, &values).unwrap();
        assert!(
            out.ensemble.len() <= 17,
            "state {i}: {} members remain",
            out.ensemble.len()
        );
        assert!(out.ensemble.weights().iter().all(|&w| w >= 0.0));
        let avg_after: f64 = out
            .ensemble
            .weights()
            .iter()
            .zip(&out.values)
            .map(|(w, v)| w * v)
            .sum();
        let value_drift = (avg_before - avg_after).abs();
        let bary_drift = out.ensemble.barycenter().max_abs_diff(&bary_before);
        assert!(value_drift <= 1e-10, "state {i}: value drift {value_drift}");
        assert!(bary_drift <= 1e-10, "state {i}: barycenter drift {bary_drift}");
        max_members = max_members.max(out.ensemble.len());
        worst_drift = worst_drift.max(value_drift).max(bary_drift);
    }
    pass(
        6,
        t,
        format!("20 reductions, <= {max_members} members, worst drift {worst_drift:.2e}"),
    );
}

/// Criterion 7: Pure-state collapse: on 20 random entangled two-qubit pure states the
/// correlation roof, the numeric formation roof, the directed-correlation
/// max and the entanglement entropy pairwise agree within 2e-3 bits.
#[test]
fn criterion_07_pure_state_collapse() {
    let t = Instant::now();
    let dims = Dims::new(vec![2, 2]).unwrap();
    // deterministic rejection sampling: keep visibly entangled states
    let mut picked = Vec::new();
    let mut probe = 0u64;
    while picked.len() < 20 {
        let phi = random_pure(&dims, derive_seed(7, &[probe]));
        if entanglement_entropy(&phi, &cut01()).unwrap() > 0.05 {
            picked.push((probe, phi));
        }
        probe += 1;
    }
    let worst = picked
        .par_iter()
        .map(|(i, phi)| {
            let config = OptimizerConfig::default().with_seed(derive_seed(7, &[*i, 99]));
            let rho = phi.to_density();
            let e = entanglement_entropy(phi, &cut01()).unwrap();
            let values = [
                e,
                eof_numeric(&rho, &cut01(), &config, &[]).unwrap().value,
                classical_correlation_max(&rho, &cut01(), &config).unwrap().value,
                correlation_roof(&rho, &cut01(), RoofVariant::Max, &config, &[])
                    .unwrap()
                    .value,
            ];
            let mut worst = 0.0f64;
            for a in 0..values.len() {
                for b in (a + 1)..values.len() {
                    let gap = (values[a] - values[b]).abs();
                    assert!(
                        gap <= 2e-3,
                        "state {i}: values {values:?} disagree by {gap}"
                    );
                    worst = worst.max(gap);
                }
            }
            worst
        })
        .reduce(|| 0.0f64, f64::max);
    pass(7, t, format!("20 pure states, worst pairwise gap {worst:.2e}"));
}

/// Criterion 8: Cost-chain arithmetic: singlet with n = 10 gives chain value
/// 0.9 x roof with roof in [0.998, 1.0]; n = 1 gives exactly 0.
#[test]
fn criterion_08_cost_chain_arithmetic() {
    let t = Instant::now();
    let rho = PureState::singlet().to_density();
    let config = OptimizerConfig::default().with_seed(8);
    let report = cost_lower_bound_chain(&rho, &cut01(), 10, &config, &[]).unwrap();
    let g = report.roof_estimate.value;
    assert!(
        (0.998..=1.0).contains(&g),
        "roof estimate {g} outside [0.998, 1.0]"
    );
    assert_eq!(report.chain_value, 0.9 * g);
    assert_eq!(report.roof_estimate.direction, BoundDirection::Upper);

    let one = cost_lower_bound_chain(&rho, &cut01(), 1, &config, &[]).unwrap();
    assert_eq!(one.chain_value, 0.0);
    pass(
        8,
        t,
        format!("roof {g:.6}, chain(10) {:.6}, chain(1) = 0", report.chain_value),
    );
}

/// Criterion 9: Bound-entangled evidence: the tiles state passes the partial-transpose
/// test (min eigenvalue >= -1e-12) while its correlation roof with 20
/// restarts stays above 0.01 bits. The roof value is an upper-direction
/// heuristic estimate, not a violation-grade certificate.
#[test]
fn criterion_09_bound_entangled_evidence() {
    let t = Instant::now();
    let rho = tiles_state();
    for factor in [0, 1] {
        let (_, min_eig) = rho.partial_transpose(factor).unwrap();
        assert!(
            min_eig >= -1e-12,
            "partial transpose on {factor} has eigenvalue {min_eig}"
        );
    }
    let config = OptimizerConfig::default()
        .with_restarts(20)
        .with_max_iterations(120)
        .with_ensemble_size(6)
        .with_seed(9);
    let cut = Bipartition::new(vec![0], vec![1], 2).unwrap();
    let g = correlation_roof(&rho, &cut, RoofVariant::Max, &config, &[]).unwrap();
    assert_eq!(g.direction, BoundDirection::Upper);
    assert!(
        g.value > 0.01,
        "tiles roof estimate {} not above 0.01 bits",
        g.value
    );
    pass(
        9,
        t,
        format!(
            "tiles PPT confirmed; roof estimate {:.4} bits (direction upper, heuristic evidence only)",
            g.value
        ),
    );
}

/// Criterion 10: Cloning gap: two singlet copies cost two bits of formation against
/// one for a single copy.
#[test]
fn criterion_10_cloning_gap() {
    let t = Instant::now();
    let rho = PureState::singlet().to_density();
    let rep = cloning_gap(&rho, &OptimizerConfig::default().with_seed(10)).unwrap();
    assert!(
        (1.99..=2.01).contains(&rep.ef_joint.value),
        "joint formation {}",
        rep.ef_joint.value
    );
    assert_eq!(rep.ef_joint.direction, BoundDirection::Upper);
    assert_eq!(rep.ef_single.direction, BoundDirection::Exact);
    assert!((rep.ef_single.value - 1.0).abs() < 1e-9);
    assert!((rep.gap_bits - 1.0).abs() < 0.02);
    pass(
        10,
        t,
        format!(
            "joint {:.6} (upper) vs single {:.6} (exact), gap {:.6}",
            rep.ef_joint.value, rep.ef_single.value, rep.gap_bits
        ),
    );
}

/// Criterion 11: Determinism: repeating a command with identical flags and seed
/// produces byte-identical report files.
#[test]
fn criterion_11_byte_identical_reports() {
    let t = Instant::now();
    let dir = std::env::temp_dir().join(format!("entlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |args: &[&str]| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_entlab"))
            .args(args)
            .current_dir(&dir)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "command {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    };

    run(&[
        "verify", "lemma1", "--samples", "3", "--dims", "2,2,2,2", "--seed", "42",
        "--restarts", "4", "--max-iterations", "300", "-o", "rep1.json",
    ]);
    run(&[
        "verify", "lemma1", "--samples", "3", "--dims", "2,2,2,2", "--seed", "42",
        "--restarts", "4", "--max-iterations", "300", "-o", "rep2.json",
    ]);
    let a = std::fs::read(dir.join("rep1.json")).unwrap();
    let b = std::fs::read(dir.join("rep2.json")).unwrap();
    assert_eq!(a, b, "verify reports differ between identical runs");

    run(&["states", "werner", "--p", "0.8", "-o", "w.json"]);
    run(&[
        "compute", "--measure", "eof", "--state", "w.json", "--cut", "0/1",
        "--seed", "5", "--restarts", "6", "--max-iterations", "500", "-o", "e1.json",
    ]);
    run(&[
        "compute", "--measure", "eof", "--state", "w.json", "--cut", "0/1",
        "--seed", "5", "--restarts", "6", "--max-iterations", "500", "-o", "e2.json",
    ]);
    let a = std::fs::read(dir.join("e1.json")).unwrap();
    let b = std::fs::read(dir.join("e2.json")).unwrap();
    assert_eq!(a, b, "compute reports differ between identical runs");

    run(&[
        "verify", "duality", "--samples", "2", "--dims", "2,2,2", "--seed", "7",
        "--restarts", "4", "--max-iterations", "300", "--format", "csv", "-o", "d1.csv",
    ]);
    run(&[
        "verify", "duality", "--samples", "2", "--dims", "2,2,2", "--seed", "7",
        "--restarts", "4", "--max-iterations", "300", "--format", "csv", "-o", "d2.csv",
    ]);
    let a = std::fs::read(dir.join("d1.csv")).unwrap();
    let b = std::fs::read(dir.join("d2.csv")).unwrap();
    assert_eq!(a, b, "CSV reports differ between identical runs");

    pass(11, t, "verify/compute/CSV outputs byte-identical across reruns".into());
}
