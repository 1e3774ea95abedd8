//! Decompositions of a state from measurements on its purifying ancilla.
//!
//! Every finite decomposition of rho arises from a POVM on the ancilla of a
//! purification (pure decompositions from rank-1 outcomes realized by rows
//! of a mixing isometry), so these parametrizations are lossless.

use qstate_core::density::OUTCOME_PRUNE;
use qstate_core::linalg::{creal, CMatrix, CVector, max_abs_diff, sqrt_psd};
use qstate_core::{DensityMatrix, Ensemble, EnsembleKind, Povm};

use crate::config::{OptError, Result};

/// Eigendata of the state restricted to its range: `vals` descending and
/// strictly positive (rank r of them), `vecs` the matching d x r eigenvector
/// block. This is the canonical purification in coordinate form.
#[derive(Debug, Clone)]
pub struct PurificationBasis {
    pub vals: Vec<f64>,
    pub vecs: CMatrix,
}

impl PurificationBasis {
    pub fn of(rho: &DensityMatrix) -> Self {
        let (vals, vecs) = rho.eigen_decomposition();
        let r = rho.rank();
        let vals: Vec<f64> = vals.iter().take(r).map(|&l| l.max(0.0)).collect();
        let vecs = vecs.columns(0, r).into_owned();
        Self { vals, vecs }
    }

    pub fn rank(&self) -> usize {
        self.vals.len()
    }

    pub fn dim(&self) -> usize {
        self.vecs.nrows()
    }

    /// Pure member for row `i` of a mixing isometry: amplitude vector
    /// sum_k W[i,k] sqrt(l_k) v_k and its weight.
    pub fn pure_member(&self, mixing: &CMatrix, i: usize) -> (f64, CVector) {
        let d = self.dim();
        let mut amp = CVector::zeros(d);
        for (k, &l) in self.vals.iter().enumerate() {
            let w = mixing[(i, k)] * creal(l.sqrt());
            if w.norm_sqr() == 0.0 {
                continue;
            }
            for a in 0..d {
                amp[a] += w * self.vecs[(a, k)];
            }
        }
        let p = amp.norm_squared();
        (p, amp)
    }

    /// Mixed member for ancilla effect E: weight tr((I (x) E) psi) and the
    /// unnormalized reduced state vecs (L^1/2 E^T L^1/2) vecs^dag.
    pub fn mixed_member(&self, effect: &CMatrix) -> (f64, CMatrix) {
        let r = self.rank();
        let mut core = CMatrix::zeros(r, r);
        for k in 0..r {
            for l in 0..r {
                core[(k, l)] =
                    creal((self.vals[k] * self.vals[l]).sqrt()) * effect[(l, k)];
            }
        }
        let raw = &self.vecs * core * self.vecs.adjoint();
        let p: f64 = (0..r).map(|k| self.vals[k] * effect[(k, k)].re).sum();
        (p, raw)
    }
}

/// Pure decomposition from the purifying ancilla: applies the
/// `m x r` mixing isometry to the canonical purification's ancilla and
/// measures it in the computational basis. Outcomes below the pruning
/// threshold are dropped.
pub fn pure_ensembles_from_purification(
    rho: &DensityMatrix,
    m: usize,
    mixing: &CMatrix,
) -> Result<Ensemble> {
    let basis = PurificationBasis::of(rho);
    let r = basis.rank();
    if m < r {
        return Err(OptError::InvalidArgument(format!(
            "ensemble size {m} below rank {r}"
        )));
    }
    if mixing.nrows() != m || mixing.ncols() != r {
        return Err(OptError::InvalidArgument(format!(
            "mixing isometry is {}x{}, expected {m}x{r}",
            mixing.nrows(),
            mixing.ncols()
        )));
    }
    let gram = mixing.adjoint() * mixing;
    let dev = max_abs_diff(&gram, &CMatrix::identity(r, r));
    if dev > 1e-8 {
        return Err(OptError::InvalidArgument(format!(
            "mixing parameter columns are not orthonormal (max dev {dev:.3e})"
        )));
    }

    let mut weights = Vec::with_capacity(m);
    let mut members = Vec::with_capacity(m);
    for i in 0..m {
        let (p, amp) = basis.pure_member(mixing, i);
        if p < OUTCOME_PRUNE {
            continue;
        }
        let normalized = amp.scale(1.0 / p.sqrt());
        let proj = &normalized * normalized.adjoint();
        weights.push(p);
        members.push(DensityMatrix::new_unchecked(rho.dims().clone(), proj));
    }
    Ensemble::new(weights, members, EnsembleKind::PureOnly, rho).map_err(OptError::State)
}

/// Decomposition induced by a general POVM on the purifying ancilla:
/// member_i = tr_anc((I (x) E_i) |psi><psi|) / p_i. Every finite
/// decomposition of rho arises this way.
pub fn mixed_ensembles_from_purification(
    rho: &DensityMatrix,
    ancilla_povm: &Povm,
) -> Result<Ensemble> {
    let basis = PurificationBasis::of(rho);
    let r = basis.rank();
    if ancilla_povm.dim() != r {
        return Err(OptError::InvalidArgument(format!(
            "ancilla POVM acts on dimension {} but the purifying ancilla has dimension {r}",
            ancilla_povm.dim()
        )));
    }
    let mut weights = Vec::new();
    let mut members = Vec::new();
    for effect in ancilla_povm.effects() {
        let (p, raw) = basis.mixed_member(effect);
        if p < OUTCOME_PRUNE {
            continue;
        }
        let mat = qstate_core::linalg::hermitize(&raw).scale(1.0 / p);
        weights.push(p);
        members.push(DensityMatrix::new_unchecked(rho.dims().clone(), mat));
    }
    Ensemble::new(weights, members, EnsembleKind::Mixed, rho).map_err(OptError::State)
}

/// Inverts the ancilla-mixing map for a known pure decomposition: returns the mixing
/// matrix whose rows regenerate the given members, padded with zero rows to
/// `m`. Used to seed searches from user-supplied decompositions.
pub fn mixing_from_pure_ensemble(
    rho: &DensityMatrix,
    ensemble: &Ensemble,
    m: usize,
) -> Result<CMatrix> {
    let basis = PurificationBasis::of(rho);
    let r = basis.rank();
    let n = ensemble.len();
    if m < n || m < r {
        return Err(OptError::InvalidArgument(format!(
            "cannot pack {n} members (rank {r}) into size {m}"
        )));
    }
    let mut w = CMatrix::zeros(m, r);
    for (i, (p, member)) in ensemble.iter().enumerate() {
        // leading eigenvector of the rank-1 member
        let (_, vecs) = member.eigen_decomposition();
        let phi = vecs.column(0);
        for k in 0..r {
            let overlap = basis.vecs.column(k).dotc(&phi);
            let l = basis.vals[k];
            if l > 1e-13 {
                w[(i, k)] = creal(p.sqrt()) * overlap / creal(l.sqrt());
            }
        }
    }
    Ok(crate::perturb::polish_isometry(&w))
}

/// Ancilla-POVM blocks realizing a known (generally mixed) decomposition:
/// E_i = L^-1/2 (V^dag p_i rho_i V)^T L^-1/2, stacked as sqrt(E_i) blocks and
/// padded with zero blocks to `n_outcomes`.
pub fn blocks_from_mixed_ensemble(
    rho: &DensityMatrix,
    ensemble: &Ensemble,
    n_outcomes: usize,
) -> Result<CMatrix> {
    let basis = PurificationBasis::of(rho);
    let r = basis.rank();
    let n = ensemble.len();
    if n_outcomes < n {
        return Err(OptError::InvalidArgument(format!(
            "cannot pack {n} members into {n_outcomes} outcomes"
        )));
    }
    let mut blocks = CMatrix::zeros(n_outcomes * r, r);
    for (i, (p, member)) in ensemble.iter().enumerate() {
        let mut core = basis.vecs.adjoint() * member.matrix().scale(p) * &basis.vecs;
        for k in 0..r {
            for l in 0..r {
                let scale = (basis.vals[k] * basis.vals[l]).sqrt().max(1e-300);
                core[(k, l)] /= creal(scale);
            }
        }
        let effect = core.transpose();
        let root = sqrt_psd(&qstate_core::linalg::hermitize(&effect));
        for a in 0..r {
            for b in 0..r {
                blocks[(i * r + a, b)] = root[(a, b)];
            }
        }
    }
    Ok(crate::perturb::polish_isometry(&blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qstate_core::random::{random_density, random_isometry, rng_from_seed};
    use qstate_core::Dims;

    fn two_qubit(seed: u64) -> DensityMatrix {
        random_density(&Dims::new(vec![2, 2]).unwrap(), 2, seed).unwrap()
    }

    #[test]
    fn identity_mixing_gives_eigendecomposition() {
        let rho = two_qubit(1);
        let r = rho.rank();
        let ens = pure_ensembles_from_purification(&rho, r, &CMatrix::identity(r, r)).unwrap();
        let (vals, _) = rho.eigen_decomposition();
        for ((w, member), l) in ens.iter().zip(vals.iter()) {
            assert!((w - l).abs() < 1e-10);
            assert!(member.is_pure(1e-9));
        }
    }

    #[test]
    fn any_isometry_reproduces_barycenter() {
        let rho = two_qubit(2);
        let r = rho.rank();
        let mut rng = rng_from_seed(12);
        for m in [r, r + 1, r + 3] {
            let mix = random_isometry(m, r, &mut rng);
            let ens = pure_ensembles_from_purification(&rho, m, &mix).unwrap();
            assert!(ens.barycenter().max_abs_diff(&rho) < 1e-9);
        }
    }

    #[test]
    fn hadamard_mixing_of_maximally_mixed_gives_plus_minus() {
        let rho = DensityMatrix::maximally_mixed(Dims::new(vec![2]).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mix = CMatrix::from_row_slice(2, 2, &[creal(h), creal(h), creal(h), creal(-h)]);
        let ens = pure_ensembles_from_purification(&rho, 2, &mix).unwrap();
        assert_eq!(ens.len(), 2);
        for (w, member) in ens.iter() {
            assert!((w - 0.5).abs() < 1e-12);
            // |+><+| and |-><-| have off-diagonal magnitude 1/2
            assert!((member.matrix()[(0, 1)].norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_isometric_mixing() {
        let rho = two_qubit(3);
        let r = rho.rank();
        let bad = CMatrix::from_element(r, r, creal(0.5));
        assert!(pure_ensembles_from_purification(&rho, r, &bad).is_err());
        assert!(pure_ensembles_from_purification(&rho, r.saturating_sub(1), &bad).is_err());
    }

    #[test]
    fn trivial_ancilla_povm_gives_trivial_ensemble() {
        let rho = two_qubit(4);
        let r = rho.rank();
        let ens = mixed_ensembles_from_purification(&rho, &Povm::trivial(r)).unwrap();
        assert_eq!(ens.len(), 1);
        assert!(ens.members()[0].max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn basis_ancilla_povm_gives_eigendecomposition() {
        let rho = two_qubit(5);
        let r = rho.rank();
        let ens =
            mixed_ensembles_from_purification(&rho, &Povm::computational_basis(r)).unwrap();
        let (vals, _) = rho.eigen_decomposition();
        for ((w, member), l) in ens.iter().zip(vals.iter()) {
            assert!((w - l).abs() < 1e-10);
            assert!(member.is_pure(1e-8));
        }
    }

    #[test]
    fn random_ancilla_povm_reproduces_barycenter() {
        let rho = two_qubit(6);
        let r = rho.rank();
        let mut rng = rng_from_seed(77);
        let blocks = random_isometry(3 * r, r, &mut rng);
        let povm = Povm::from_isometry_blocks(&blocks, 3).unwrap();
        let ens = mixed_ensembles_from_purification(&rho, &povm).unwrap();
        assert!(ens.barycenter().max_abs_diff(&rho) < 1e-9);
        assert!(mixed_ensembles_from_purification(&rho, &Povm::trivial(r + 1)).is_err());
    }

    #[test]
    fn mixing_inversion_round_trips() {
        let rho = two_qubit(7);
        let r = rho.rank();
        let mut rng = rng_from_seed(8);
        let mix = random_isometry(r + 2, r, &mut rng);
        let ens = pure_ensembles_from_purification(&rho, r + 2, &mix).unwrap();
        let w = mixing_from_pure_ensemble(&rho, &ens, ens.len() + 1).unwrap();
        let back = pure_ensembles_from_purification(&rho, w.nrows(), &w).unwrap();
        assert!(back.barycenter().max_abs_diff(&rho) < 1e-9);
        // same member count after pruning zero rows
        assert_eq!(back.len(), ens.len());
    }

    #[test]
    fn block_inversion_round_trips() {
        let rho = two_qubit(9);
        let r = rho.rank();
        let mut rng = rng_from_seed(10);
        let blocks = random_isometry(2 * r, r, &mut rng);
        let povm = Povm::from_isometry_blocks(&blocks, 2).unwrap();
        let ens = mixed_ensembles_from_purification(&rho, &povm).unwrap();
        let iso = blocks_from_mixed_ensemble(&rho, &ens, ens.len() + 1).unwrap();
        let povm2 = Povm::from_isometry_blocks(&iso, ens.len() + 1).unwrap();
        let back = mixed_ensembles_from_purification(&rho, &povm2).unwrap();
        assert!(back.barycenter().max_abs_diff(&rho) < 1e-9);
    }
}
