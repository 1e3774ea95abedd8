//! Density matrices tagged with a tensor-factor dimension list, plus the
//! linear-algebra operations the rest of the workspace is built on.

use crate::dims::Dims;
use crate::error::{Result, StateError};
use crate::linalg::{
    self, all_finite, creal, czero, eigh, eigvalsh, hermiticity_deviation, hermitize,
    max_abs_diff, spectrum_entropy_bits, CMatrix, CVector,
};
use crate::povm::Povm;
use crate::pure::PureState;

/// Max entrywise deviation from Hermiticity accepted by `new`.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// |trace - 1| accepted by `new`.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted by `new`.
pub const PSD_TOL: f64 = 1e-10;
/// Measurement outcomes with probability below this are dropped.
pub const OUTCOME_PRUNE: f64 = 1e-14;

/// Trace-one positive-semidefinite Hermitian matrix together with the local
/// dimensions of its tensor factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Dims,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validating constructor: checks side length, finiteness, Hermiticity,
    /// unit trace and positive semidefiniteness within the stated tolerances.
    pub fn new(dims: Dims, mat: CMatrix) -> Result<Self> {
        let side = dims.total();
        if mat.nrows() != side || mat.ncols() != side {
            return Err(StateError::SideMismatch {
                expected: side,
                got: mat.nrows(),
            });
        }
        if !all_finite(&mat) {
            return Err(StateError::NonFinite);
        }
        let dev = hermiticity_deviation(&mat);
        if dev > HERMITICITY_TOL {
            return Err(StateError::NotHermitian { max_dev: dev });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(StateError::TraceNotOne { trace: trace.re });
        }
        let min_eig = eigvalsh(&mat).last().copied().unwrap_or(0.0);
        if min_eig < -PSD_TOL {
            return Err(StateError::NotPositiveSemidefinite { min_eig });
        }
        Ok(Self { dims, mat })
    }

    /// Constructor for values that are valid by construction. The invariants
    /// still hold; they are just not re-checked here.
    pub fn new_unchecked(dims: Dims, mat: CMatrix) -> Self {
        debug_assert_eq!(dims.total(), mat.nrows());
        Self { dims, mat }
    }

    pub fn maximally_mixed(dims: Dims) -> Self {
        let d = dims.total();
        let mat = CMatrix::identity(d, d).scale(1.0 / d as f64);
        Self { dims, mat }
    }

    pub fn from_pure(phi: &PureState) -> Self {
        let v = phi.amplitudes();
        let mat = v * v.adjoint();
        Self {
            dims: phi.dims().clone(),
            mat,
        }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    /// Total Hilbert-space dimension (matrix side).
    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// tr(rho^2); equals 1 exactly on pure states.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (1.0 - self.purity()).abs() <= tol
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.mat)
    }

    /// Eigendecomposition with descending eigenvalues and phase-fixed
    /// eigenvector columns.
    pub fn eigen_decomposition(&self) -> (Vec<f64>, CMatrix) {
        eigh(&self.mat)
    }

    /// Number of eigenvalues above `linalg::RANK_EPS`.
    pub fn rank(&self) -> usize {
        self.eigenvalues()
            .iter()
            .filter(|&&l| l > linalg::RANK_EPS)
            .count()
            .max(1)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        max_abs_diff(&self.mat, &other.mat)
    }

    /// Kronecker product; dims concatenate.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            dims: self.dims.concat(other.dims()),
            mat: self.mat.kronecker(&other.mat),
        }
    }

    /// Traces out every factor not listed in `keep`. The result carries the
    /// kept factors in their original order and preserves the trace.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.dims.check_subset(keep)?;
        let factors = self.dims.factors();
        let strides = self.dims.strides();
        let traced: Vec<usize> = (0..factors.len()).filter(|f| !keep.contains(f)).collect();
        if traced.is_empty() {
            return Ok(self.clone());
        }

        let offsets = |subset: &[usize]| -> Vec<usize> {
            let sub_dims: Vec<usize> = subset.iter().map(|&f| factors[f]).collect();
            let total: usize = sub_dims.iter().product();
            let mut out = Vec::with_capacity(total);
            for flat in 0..total {
                let mut rem = flat;
                let mut off = 0;
                for (pos, &f) in subset.iter().enumerate().rev() {
                    let digit = rem % sub_dims[pos];
                    rem /= sub_dims[pos];
                    off += digit * strides[f];
                }
                out.push(off);
            }
            out
        };

        let keep_off = offsets(keep);
        let tr_off = offsets(&traced);
        let k = keep_off.len();
        let mut out = CMatrix::zeros(k, k);
        for (r, &ro) in keep_off.iter().enumerate() {
            for (c, &co) in keep_off.iter().enumerate() {
                let mut acc = czero();
                for &t in &tr_off {
                    acc += self.mat[(ro + t, co + t)];
                }
                out[(r, c)] = acc;
            }
        }
        let kept_factors: Vec<usize> = keep.iter().map(|&f| factors[f]).collect();
        Ok(DensityMatrix {
            dims: Dims::new(kept_factors)?,
            mat: out,
        })
    }

    /// Reorders tensor factors: new factor `i` is old factor `perm[i]`.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<DensityMatrix> {
        let index_map = permutation_index_map(&self.dims, perm)?;
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                out[(index_map[r], index_map[c])] = self.mat[(r, c)];
            }
        }
        let new_factors: Vec<usize> = perm.iter().map(|&p| self.dims.factors()[p]).collect();
        Ok(DensityMatrix {
            dims: Dims::new(new_factors)?,
            mat: out,
        })
    }

    /// Groups the factors into a bipartite state with dims
    /// `[prod(left), prod(right)]`, reordering factors to `left ++ right`.
    pub fn regroup(&self, left: &[usize], right: &[usize]) -> Result<DensityMatrix> {
        let mut perm: Vec<usize> = Vec::with_capacity(left.len() + right.len());
        perm.extend_from_slice(left);
        perm.extend_from_slice(right);
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted.len() != self.dims.len() || sorted.iter().enumerate().any(|(i, &f)| i != f) {
            return Err(StateError::InvalidArgument(format!(
                "cut {:?} / {:?} does not partition the {} factors",
                left,
                right,
                self.dims.len()
            )));
        }
        if left.is_empty() || right.is_empty() {
            return Err(StateError::InvalidArgument(
                "both sides of a bipartition must be non-empty".into(),
            ));
        }
        let permuted = self.permute_factors(&perm)?;
        let dl: usize = left.iter().map(|&f| self.dims.factors()[f]).product();
        let dr: usize = right.iter().map(|&f| self.dims.factors()[f]).product();
        Ok(DensityMatrix {
            dims: Dims::new(vec![dl, dr])?,
            mat: permuted.mat,
        })
    }

    /// Von Neumann entropy in bits. Eigenvalues are clamped to [0, 1] and
    /// 0 log 0 := 0.
    pub fn von_neumann_entropy(&self) -> f64 {
        spectrum_entropy_bits(&self.eigenvalues())
    }

    /// Canonical purification from the eigendecomposition: the ancilla factor
    /// (dimension = rank) is appended last, eigenvalues are taken in
    /// descending order and each eigenvector carries the fixed phase
    /// convention, so the output is deterministic.
    pub fn purify(&self) -> PureState {
        let (vals, vecs) = self.eigen_decomposition();
        let r = vals.iter().filter(|&&l| l > linalg::RANK_EPS).count().max(1);
        let d = self.dim();
        let mut amps = CVector::zeros(d * r);
        for k in 0..r {
            let w = creal(vals[k].max(0.0).sqrt());
            for i in 0..d {
                amps[i * r + k] = w * vecs[(i, k)];
            }
        }
        let norm = amps.norm();
        if norm > 0.0 {
            amps /= creal(norm);
        }
        let dims = Dims::new(
            self.dims
                .factors()
                .iter()
                .copied()
                .chain(std::iter::once(r))
                .collect(),
        )
        .expect("purification dims are valid");
        PureState::new_unchecked(dims, amps)
    }

    /// Applies a POVM to factor `on` and returns the surviving outcomes as
    /// `(probability, post-measurement state of the remaining factors)`.
    /// Outcomes with probability below `OUTCOME_PRUNE` are dropped.
    pub fn measure_subsystem(&self, povm: &Povm, on: usize) -> Result<Vec<(f64, DensityMatrix)>> {
        let d_on = self.dims.factor(on)?;
        if povm.dim() != d_on {
            return Err(StateError::InvalidArgument(format!(
                "POVM acts on dimension {} but factor {} has dimension {}",
                povm.dim(),
                on,
                d_on
            )));
        }
        if self.dims.len() < 2 {
            return Err(StateError::InvalidArgument(
                "measure_subsystem needs at least two factors".into(),
            ));
        }
        let keep: Vec<usize> = (0..self.dims.len()).filter(|&f| f != on).collect();
        let pre: usize = self.dims.factors()[..on].iter().product();
        let post: usize = self.dims.factors()[on + 1..].iter().product();
        let eye_pre = CMatrix::identity(pre, pre);
        let eye_post = CMatrix::identity(post, post);

        let mut outcomes = Vec::with_capacity(povm.n_outcomes());
        for effect in povm.effects() {
            let full = eye_pre.kronecker(effect).kronecker(&eye_post);
            let weighted = &full * &self.mat;
            let p = weighted.trace().re;
            if p < OUTCOME_PRUNE {
                continue;
            }
            let partial = DensityMatrix {
                dims: self.dims.clone(),
                mat: weighted,
            }
            .partial_trace(&keep)?;
            let mat = hermitize(&partial.mat).scale(1.0 / p);
            outcomes.push((
                p,
                DensityMatrix {
                    dims: partial.dims,
                    mat,
                },
            ));
        }
        Ok(outcomes)
    }

    /// Transposes one factor and reports the resulting matrix together with
    /// its minimum eigenvalue.
    pub fn partial_transpose(&self, on: usize) -> Result<(CMatrix, f64)> {
        self.dims.factor(on)?;
        let factors = self.dims.factors();
        let strides = self.dims.strides();
        let d = self.dim();
        let d_on = factors[on];
        let s_on = strides[on];
        let mut out = CMatrix::zeros(d, d);
        for r in 0..d {
            let r_digit = (r / s_on) % d_on;
            let r_base = r - r_digit * s_on;
            for c in 0..d {
                let c_digit = (c / s_on) % d_on;
                let c_base = c - c_digit * s_on;
                out[(r_base + c_digit * s_on, c_base + r_digit * s_on)] = self.mat[(r, c)];
            }
        }
        let min_eig = eigvalsh(&out).last().copied().unwrap_or(0.0);
        Ok((out, min_eig))
    }
}

/// Flat-index map realizing a factor permutation: `map[old] = new`.
fn permutation_index_map(dims: &Dims, perm: &[usize]) -> Result<Vec<usize>> {
    let n = dims.len();
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(StateError::InvalidArgument(format!(
            "permutation length {} does not match {} factors",
            perm.len(),
            n
        )));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(StateError::InvalidArgument(
                "factor permutation must list each factor exactly once".into(),
            ));
        }
        seen[p] = true;
    }
    let factors = dims.factors();
    let old_strides = dims.strides();
    let new_factors: Vec<usize> = perm.iter().map(|&p| factors[p]).collect();
    let new_dims = Dims::new(new_factors)?;
    let new_strides = new_dims.strides();
    let total = dims.total();
    let mut map = vec![0usize; total];
    for (old, entry) in map.iter_mut().enumerate() {
        let mut new_index = 0;
        for (new_pos, &old_pos) in perm.iter().enumerate() {
            let digit = (old / old_strides[old_pos]) % factors[old_pos];
            new_index += digit * new_strides[new_pos];
        }
        *entry = new_index;
    }
    Ok(map)
}

/// Index map shared with `PureState::permute_factors`.
pub(crate) fn pure_permutation_index_map(dims: &Dims, perm: &[usize]) -> Result<Vec<usize>> {
    permutation_index_map(dims, perm)
}
