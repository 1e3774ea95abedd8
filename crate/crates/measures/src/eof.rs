//! Entanglement of formation: the spin-flip closed form on two qubits and
//! the numeric pure convex roof for everything else.

use qstate_core::linalg::{eigvalsh, sqrt_psd, C64, CMatrix};
use qstate_core::{DensityMatrix, Ensemble, EnsembleKind};
use roof_optimizer::{minimize_ensemble_average, BoundDirection, OptimizerConfig};

use crate::cut::Bipartition;
use crate::error::{MeasureError, Result};
use crate::result::{MeasureResult, Witness};

/// Binary entropy in bits with the endpoints pinned to zero.
pub fn binary_entropy(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.log2();
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).log2();
    }
    h
}

fn spin_flip_spectrum(rho: &DensityMatrix) -> Vec<f64> {
    let y = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ],
    );
    let yy = y.kronecker(&y);
    let conj = rho.matrix().conjugate();
    let tilde = &yy * conj * &yy;
    let root = sqrt_psd(rho.matrix());
    let m = &root * tilde * &root;
    eigvalsh(&m)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect()
}

/// Concurrence of a two-qubit state: max(0, l1 - l2 - l3 - l4) over the
/// square roots of the spin-flip spectrum in decreasing order.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims().factors() != [2, 2] {
        return Err(MeasureError::DimensionMismatch {
            expected: "[2,2]".into(),
            got: rho.dims().to_string(),
        });
    }
    let l = spin_flip_spectrum(rho);
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Closed-form entanglement of formation for two qubits:
/// h((1 + sqrt(1 - C^2)) / 2) with C the concurrence.
pub fn eof_exact_two_qubit(rho: &DensityMatrix) -> Result<MeasureResult> {
    let c = concurrence_two_qubit(rho)?;
    let value = binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt()));
    Ok(MeasureResult::exact(value))
}

/// Numeric convex roof: minimizes the average entanglement entropy over pure
/// decompositions. The value is an upper bound of the true infimum.
pub fn eof_numeric(
    rho: &DensityMatrix,
    cut: &Bipartition,
    config: &OptimizerConfig,
    inits: &[Ensemble],
) -> Result<MeasureResult> {
    // validate the cut once up front so the per-member closure cannot fail
    rho.regroup(cut.left(), cut.right())?;
    let left = cut.left().to_vec();
    let member_entropy = move |m: &DensityMatrix| {
        m.partial_trace(&left)
            .expect("cut was validated")
            .von_neumann_entropy()
    };
    let opt = minimize_ensemble_average(member_entropy, rho, EnsembleKind::PureOnly, config, inits)?;
    Ok(MeasureResult {
        value: opt.value,
        direction: BoundDirection::Upper,
        witness: Some(Witness::Ensemble(opt.ensemble)),
        diagnostics: opt.diagnostics,
    })
}

/// Werner-type mixture p * singlet + (1 - p) * I/4.
pub fn werner_two_qubit(p: f64) -> Result<DensityMatrix> {
    if !(-1.0 / 3.0..=1.0).contains(&p) {
        return Err(MeasureError::InvalidArgument(format!(
            "werner parameter {p} outside [-1/3, 1]"
        )));
    }
    let singlet = qstate_core::PureState::singlet().to_density();
    let eye = CMatrix::identity(4, 4).scale(0.25 * (1.0 - p));
    let mat = singlet.matrix().scale(p) + eye;
    Ok(DensityMatrix::new_unchecked(
        singlet.dims().clone(),
        mat,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qstate_core::random::random_density;
    use qstate_core::{Dims, PureState};

    fn cut01() -> Bipartition {
        Bipartition::new(vec![0], vec![1], 2).unwrap()
    }

    #[test]
    fn singlet_has_one_ebit_of_formation() {
        let rho = PureState::singlet().to_density();
        assert!((concurrence_two_qubit(&rho).unwrap() - 1.0).abs() < 1e-12);
        let r = eof_exact_two_qubit(&rho).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert_eq!(r.direction, BoundDirection::Exact);
    }

    #[test]
    fn separable_product_has_zero_formation() {
        let a = random_density(&Dims::new(vec![2]).unwrap(), 2, 1).unwrap();
        let b = random_density(&Dims::new(vec![2]).unwrap(), 2, 2).unwrap();
        let rho = a.tensor(&b);
        assert!(concurrence_two_qubit(&rho).unwrap() < 1e-12);
        assert!(eof_exact_two_qubit(&rho).unwrap().value < 1e-12);
    }

    #[test]
    fn werner_concurrence_matches_closed_form() {
        // concurrence of p*singlet + (1-p)I/4 is max(0, (3p-1)/2)
        let rho = werner_two_qubit(0.8).unwrap();
        let c = concurrence_two_qubit(&rho).unwrap();
        assert!((c - 0.7).abs() < 1e-10, "got {c}");
        let ef = eof_exact_two_qubit(&rho).unwrap().value;
        let expect = binary_entropy(0.5 * (1.0 + (1.0f64 - 0.49).sqrt()));
        assert!((ef - expect).abs() < 1e-12);

        let sep = werner_two_qubit(1.0 / 3.0).unwrap();
        assert!(concurrence_two_qubit(&sep).unwrap() < 1e-10);
        assert!(werner_two_qubit(1.2).is_err());
    }

    #[test]
    fn rejects_wrong_dims() {
        let rho = DensityMatrix::maximally_mixed(Dims::new(vec![3, 3]).unwrap());
        assert!(matches!(
            eof_exact_two_qubit(&rho),
            Err(MeasureError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn numeric_roof_on_pure_input_is_its_entropy() {
        let rho = random_density(&Dims::new(vec![2, 2]).unwrap(), 1, 5).unwrap();
        let direct = rho.partial_trace(&[0]).unwrap().von_neumann_entropy();
        let config = OptimizerConfig::default()
            .with_restarts(2)
            .with_max_iterations(100)
            .with_seed(3);
        let r = eof_numeric(&rho, &cut01(), &config, &[]).unwrap();
        assert!((r.value - direct).abs() < 1e-9);
        assert_eq!(r.direction, BoundDirection::Upper);
    }

    #[test]
    fn numeric_roof_tracks_exact_on_werner() {
        let rho = werner_two_qubit(0.8).unwrap();
        let exact = eof_exact_two_qubit(&rho).unwrap().value;
        let config = OptimizerConfig::default()
            .with_restarts(8)
            .with_max_iterations(1500)
            .with_seed(11);
        let numeric = eof_numeric(&rho, &cut01(), &config, &[]).unwrap().value;
        assert!(numeric >= exact - 1e-6, "{numeric} vs {exact}");
        assert!(numeric <= exact + 5e-3, "{numeric} vs {exact}");
    }
}
