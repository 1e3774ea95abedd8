//! Cross-measure invariants on random states.

use measures::{
    classical_correlation, classical_correlation_max, correlation_roof, eof_exact_two_qubit,
    eof_numeric, Bipartition, MeasuredSide, RoofVariant,
};
use qstate_core::linalg::CMatrix;
use qstate_core::random::{derive_seed, random_density, random_unitary, rng_from_seed};
use qstate_core::{DensityMatrix, Dims};
use roof_optimizer::OptimizerConfig;

fn cut01() -> Bipartition {
    Bipartition::new(vec![0], vec![1], 2).unwrap()
}

fn two_qubit(seed: u64) -> DensityMatrix {
    random_density(&Dims::new(vec![2, 2]).unwrap(), 2, seed).unwrap()
}

fn conjugate_locally(rho: &DensityMatrix, seed: u64) -> DensityMatrix {
    let mut rng = rng_from_seed(seed);
    let u = random_unitary(2, &mut rng);
    let v = random_unitary(2, &mut rng);
    let uv: CMatrix = u.kronecker(&v);
    DensityMatrix::new_unchecked(rho.dims().clone(), &uv * rho.matrix() * uv.adjoint())
}

#[test]
fn measures_are_invariant_under_local_unitaries() {
    let config = OptimizerConfig::default().with_seed(101);
    let fresh = OptimizerConfig::default().with_seed(202);
    for seed in [11u64, 12] {
        let rho = two_qubit(seed);
        let rotated = conjugate_locally(&rho, derive_seed(seed, &[5]));

        let c0 = classical_correlation_max(&rho, &cut01(), &config).unwrap().value;
        let c1 = classical_correlation_max(&rotated, &cut01(), &fresh).unwrap().value;
        assert!((c0 - c1).abs() < 5e-3, "C_max moved: {c0} vs {c1}");

        // the spin-flip spectrum takes square roots of near-zero
        // eigenvalues, so conjugation rounding is amplified past 1e-9
        let e0 = eof_exact_two_qubit(&rho).unwrap().value;
        let e1 = eof_exact_two_qubit(&rotated).unwrap().value;
        assert!((e0 - e1).abs() < 1e-6, "exact formation moved: {e0} vs {e1}");

        let n0 = eof_numeric(&rho, &cut01(), &config, &[]).unwrap().value;
        let n1 = eof_numeric(&rotated, &cut01(), &fresh, &[]).unwrap().value;
        assert!((n0 - n1).abs() < 5e-3, "numeric formation moved: {n0} vs {n1}");
    }
}

#[test]
fn correlation_roof_never_exceeds_direct_correlation() {
    // the trivial one-member ensemble is always among the roof's starts
    let config = OptimizerConfig::default()
        .with_restarts(8)
        .with_max_iterations(400)
        .with_ensemble_size(4)
        .with_seed(33);
    for seed in [21u64, 22, 23] {
        let rho = two_qubit(seed);
        let roof = correlation_roof(&rho, &cut01(), RoofVariant::Max, &config, &[])
            .unwrap()
            .value;
        let direct = classical_correlation_max(&rho, &cut01(), &config).unwrap().value;
        assert!(
            roof <= direct + 5e-3,
            "seed {seed}: roof {roof} above direct {direct}"
        );
    }
}

#[test]
fn doubling_restarts_never_worsens_correlation() {
    let base = OptimizerConfig::default()
        .with_restarts(4)
        .with_max_iterations(600)
        .with_seed(77);
    let doubled = base.with_restarts(8);
    for seed in [31u64, 32] {
        let rho = two_qubit(seed);
        let small = classical_correlation(&rho, &cut01(), MeasuredSide::Right, &base)
            .unwrap()
            .value;
        let large = classical_correlation(&rho, &cut01(), MeasuredSide::Right, &doubled)
            .unwrap()
            .value;
        assert!(
            large >= small - 1e-9,
            "seed {seed}: doubling restarts dropped {small} -> {large}"
        );
    }
}

#[test]
fn witnesses_reproduce_reported_values() {
    let config = OptimizerConfig::default()
        .with_restarts(4)
        .with_max_iterations(400)
        .with_seed(55);
    let rho = two_qubit(41);

    let r = eof_numeric(&rho, &cut01(), &config, &[]).unwrap();
    match r.witness.as_ref().unwrap() {
        measures::Witness::Ensemble(e) => {
            let recomputed: f64 = e
                .iter()
                .map(|(w, m)| {
                    w * m.partial_trace(&[0]).unwrap().von_neumann_entropy()
                })
                .sum();
            assert!((recomputed - r.value).abs() < 1e-9);
            assert!(e.barycenter().max_abs_diff(&rho) < 1e-9);
        }
        _ => panic!("formation roof must return an ensemble witness"),
    }
}
