//! Minimization of ensemble averages over decompositions of a state.
//!
//! The feasible set is parametrized losslessly through the purifying
//! ancilla: mixing isometries for pure decompositions, block isometries
//! (general ancilla POVMs) for mixed ones. The search runs hill climbs over
//! a halving chain of decomposition sizes, always including the canonical
//! starts (trivial ensemble, eigendecomposition) and any caller-supplied
//! decompositions, then applies the Caratheodory reduction to the winner.
//! Proposals touch two members at a time, so objective updates are
//! incremental.

use qstate_core::density::OUTCOME_PRUNE;
use qstate_core::linalg::{creal, CMatrix};
use qstate_core::random::{derive_seed, random_isometry, rng_from_seed};
use qstate_core::{DensityMatrix, Ensemble, EnsembleKind};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::caratheodory::caratheodory_reduce;
use crate::config::{BoundDirection, Diagnostics, EnsembleSize, OptError, OptimizerConfig, Result};
use crate::decompositions::{
    blocks_from_mixed_ensemble, mixing_from_pure_ensemble, PurificationBasis,
};
use crate::perturb::{polish_isometry, random_su2, rotate_rows, StepControl};

const ENSEMBLE_STREAM_TAG: u64 = 0x454e_534d; // "ENSM"

#[derive(Debug, Clone)]
pub struct EnsembleOptimum {
    pub ensemble: Ensemble,
    /// Per-member objective values aligned with the ensemble members.
    pub member_values: Vec<f64>,
    /// Weighted average the witness achieves; an upper bound of the true
    /// infimum.
    pub value: f64,
    pub direction: BoundDirection,
    pub diagnostics: Diagnostics,
}

#[derive(Clone)]
struct MemberEval {
    weight: f64,
    value: f64,
    live: bool,
}

struct Searcher<'a, F> {
    basis: &'a PurificationBasis,
    dims: qstate_core::Dims,
    kind: EnsembleKind,
    objective: &'a F,
}

impl<'a, F> Searcher<'a, F>
where
    F: Fn(&DensityMatrix) -> f64 + Sync,
{
    /// Number of isometry rows for a decomposition with `size` members.
    fn rows(&self, size: usize) -> usize {
        match self.kind {
            EnsembleKind::PureOnly => size,
            EnsembleKind::Mixed => size * self.basis.rank(),
        }
    }

    fn extract(&self, iso: &CMatrix, index: usize) -> Option<(f64, DensityMatrix)> {
        match self.kind {
            EnsembleKind::PureOnly => {
                let (p, amp) = self.basis.pure_member(iso, index);
                if p < OUTCOME_PRUNE {
                    return None;
                }
                let v = amp.scale(1.0 / p.sqrt());
                let proj = &v * v.adjoint();
                Some((p, DensityMatrix::new_unchecked(self.dims.clone(), proj)))
            }
            EnsembleKind::Mixed => {
                let r = self.basis.rank();
                let block = iso.rows(index * r, r);
                let effect = block.adjoint() * block;
                let (p, raw) = self.basis.mixed_member(&effect);
                if p < OUTCOME_PRUNE {
                    return None;
                }
                let mat = qstate_core::linalg::hermitize(&raw).scale(1.0 / p);
                Some((p, DensityMatrix::new_unchecked(self.dims.clone(), mat)))
            }
        }
    }

    fn eval_member(&self, iso: &CMatrix, index: usize) -> MemberEval {
        match self.extract(iso, index) {
            Some((p, member)) => MemberEval {
                weight: p,
                value: (self.objective)(&member),
                live: true,
            },
            None => MemberEval {
                weight: 0.0,
                value: 0.0,
                live: false,
            },
        }
    }

    fn total(cache: &[MemberEval]) -> f64 {
        cache
            .iter()
            .filter(|m| m.live)
            .map(|m| m.weight * m.value)
            .sum()
    }

    /// Hill climb minimizing the ensemble average from one initialization.
    fn climb(
        &self,
        mut iso: CMatrix,
        size: usize,
        config: &OptimizerConfig,
        rng: &mut ChaCha12Rng,
    ) -> ClimbResult {
        let mut cache: Vec<MemberEval> = (0..size).map(|i| self.eval_member(&iso, i)).collect();
        let mut best = Self::total(&cache);
        let mut evaluations = size as u64;
        if size < 2 {
            return ClimbResult {
                iso,
                value: best,
                evaluations,
                converged: true,
            };
        }
        let r = self.basis.rank();
        let mut ctrl = StepControl::for_budget(config.max_iterations);
        let mut converged = false;
        for _ in 0..config.max_iterations {
            // pick two distinct members; for block isometries also pick the
            // row inside each block (in-block rotations are pure gauge)
            let g = rand::Rng::random_range(rng, 0..size - 1);
            let h = rand::Rng::random_range(rng, g + 1..size);
            let (i, j) = match self.kind {
                EnsembleKind::PureOnly => (g, h),
                EnsembleKind::Mixed => (
                    g * r + rand::Rng::random_range(rng, 0..r),
                    h * r + rand::Rng::random_range(rng, 0..r),
                ),
            };
            let u = random_su2(ctrl.step, rng);
            let saved_i: Vec<_> = (0..iso.ncols()).map(|c| iso[(i, c)]).collect();
            let saved_j: Vec<_> = (0..iso.ncols()).map(|c| iso[(j, c)]).collect();
            rotate_rows(&mut iso, i, j, &u);
            let new_g = self.eval_member(&iso, g);
            let new_h = self.eval_member(&iso, h);
            evaluations += 2;
            let saved_g = std::mem::replace(&mut cache[g], new_g);
            let saved_h = std::mem::replace(&mut cache[h], new_h);
            let val = Self::total(&cache);
            if val < best {
                ctrl.accepted(best - val > config.tolerance);
                best = val;
            } else {
                cache[g] = saved_g;
                cache[h] = saved_h;
                for c in 0..iso.ncols() {
                    iso[(i, c)] = saved_i[c];
                    iso[(j, c)] = saved_j[c];
                }
                ctrl.rejected();
            }
            if ctrl.converged() {
                converged = true;
                break;
            }
        }
        ClimbResult {
            iso,
            value: best,
            evaluations,
            converged,
        }
    }
}

struct ClimbResult {
    iso: CMatrix,
    value: f64,
    evaluations: u64,
    converged: bool,
}

enum InitKind {
    /// Trivial ensemble for mixed kind; eigendecomposition for pure kind.
    Canonical,
    /// Rank-1 ancilla basis (eigendecomposition), mixed kind only.
    EigenBasis,
    /// Caller-supplied decomposition.
    User(usize),
    Random(u32),
}

/// Halving chain of decomposition sizes from `top` down to `min`.
fn size_chain(top: usize, min: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut cur = top.max(min);
    loop {
        sizes.push(cur);
        if cur == min {
            break;
        }
        cur = (cur / 2).max(min);
    }
    sizes
}

/// Minimizes `sum_i p_i f(rho_i)` over decompositions of `rho` of the given
/// kind. The returned value is an upper bound of the true infimum; the
/// witness ensemble reproduces it exactly when the objective is re-evaluated.
/// `extra_inits` seeds additional climbs from known decompositions.
pub fn minimize_ensemble_average<F>(
    member_objective: F,
    rho: &DensityMatrix,
    kind: EnsembleKind,
    config: &OptimizerConfig,
    extra_inits: &[Ensemble],
) -> Result<EnsembleOptimum>
where
    F: Fn(&DensityMatrix) -> f64 + Sync,
{
    config.validate()?;
    let basis = PurificationBasis::of(rho);
    let r = basis.rank();
    let d = rho.dim();

    // rank-1 states admit only the trivial decomposition: the purifying
    // ancilla is one-dimensional, so every parametrization reproduces rho
    if r == 1 {
        let value = member_objective(rho);
        let ensemble = Ensemble::new(vec![1.0], vec![rho.clone()], kind, rho)
            .map_err(OptError::State)?;
        return Ok(EnsembleOptimum {
            ensemble,
            member_values: vec![value],
            value,
            direction: BoundDirection::Upper,
            diagnostics: Diagnostics::single(true),
        });
    }

    let min_size = match kind {
        EnsembleKind::PureOnly => r,
        EnsembleKind::Mixed => 1,
    };
    let requested = match config.ensemble_size {
        EnsembleSize::Auto => match kind {
            EnsembleKind::PureOnly => (r * r).max(min_size),
            EnsembleKind::Mixed => d * d + 1,
        },
        EnsembleSize::Fixed(s) => {
            if s < min_size {
                return Err(OptError::InvalidArgument(format!(
                    "ensemble size {s} below the minimum {min_size} for this state"
                )));
            }
            s
        }
    };

    for (idx, init) in extra_inits.iter().enumerate() {
        if kind == EnsembleKind::PureOnly && init.kind() != EnsembleKind::PureOnly {
            return Err(OptError::InvalidArgument(format!(
                "initialization {idx} is mixed but the search is over pure decompositions"
            )));
        }
        if init.barycenter().max_abs_diff(rho) > 1e-8 {
            return Err(OptError::InvalidArgument(format!(
                "initialization {idx} does not decompose the target state"
            )));
        }
    }

    let mut sizes = size_chain(requested, min_size);
    for init in extra_inits {
        if !sizes.iter().any(|&s| s >= init.len()) {
            sizes.push(init.len());
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes.dedup();

    // deterministic climb plan
    let mut plan: Vec<(usize, InitKind)> = Vec::new();
    for &size in &sizes {
        plan.push((size, InitKind::Canonical));
        if kind == EnsembleKind::Mixed && size >= r && r > 1 {
            plan.push((size, InitKind::EigenBasis));
        }
        for (idx, init) in extra_inits.iter().enumerate() {
            let smallest_fit = sizes.iter().copied().filter(|&s| s >= init.len()).min();
            if smallest_fit == Some(size) {
                plan.push((size, InitKind::User(idx)));
            }
        }
        for j in 0..config.restarts {
            plan.push((size, InitKind::Random(j)));
        }
    }

    let searcher = Searcher {
        basis: &basis,
        dims: rho.dims().clone(),
        kind,
        objective: &member_objective,
    };
    let kind_tag = match kind {
        EnsembleKind::PureOnly => 1u64,
        EnsembleKind::Mixed => 2u64,
    };

    let results: Vec<Result<ClimbResult>> = plan
        .par_iter()
        .map(|(size, init)| {
            let rows = searcher.rows(*size);
            let mut rng = rng_from_seed(derive_seed(
                config.seed,
                &[
                    ENSEMBLE_STREAM_TAG,
                    kind_tag,
                    *size as u64,
                    match init {
                        InitKind::Random(j) => 100 + *j as u64,
                        InitKind::Canonical => 0,
                        InitKind::EigenBasis => 1,
                        InitKind::User(i) => 2 + *i as u64,
                    },
                ],
            ));
            let iso = match init {
                InitKind::Canonical => match kind {
                    // identity mixing: eigendecomposition ensemble
                    EnsembleKind::PureOnly => {
                        let mut w = CMatrix::zeros(rows, r);
                        for k in 0..r {
                            w[(k, k)] = creal(1.0);
                        }
                        w
                    }
                    // trivial POVM {identity}: the one-member ensemble {rho}
                    EnsembleKind::Mixed => {
                        let mut b = CMatrix::zeros(rows, r);
                        for k in 0..r {
                            b[(k, k)] = creal(1.0);
                        }
                        b
                    }
                },
                InitKind::EigenBasis => {
                    // rank-1 ancilla basis: B_i = |i><i| for i < r
                    let mut b = CMatrix::zeros(rows, r);
                    for k in 0..r {
                        b[(k * r + k, k)] = creal(1.0);
                    }
                    b
                }
                InitKind::User(idx) => match kind {
                    EnsembleKind::PureOnly => {
                        mixing_from_pure_ensemble(rho, &extra_inits[*idx], *size)?
                    }
                    EnsembleKind::Mixed => {
                        blocks_from_mixed_ensemble(rho, &extra_inits[*idx], *size)?
                    }
                },
                InitKind::Random(_) => random_isometry(rows, r, &mut rng),
            };
            Ok(searcher.climb(iso, *size, config, &mut rng))
        })
        .collect();

    let mut climbs = Vec::with_capacity(results.len());
    for r in results {
        climbs.push(r?);
    }

    let mut best_idx = 0usize;
    for (k, c) in climbs.iter().enumerate() {
        if c.value < climbs[best_idx].value {
            best_idx = k;
        }
    }
    let winner = &climbs[best_idx];
    let winner_size = plan[best_idx].0;

    // rebuild the witness from the polished isometry with a fresh evaluation
    let polished = polish_isometry(&winner.iso);
    let mut weights = Vec::new();
    let mut members = Vec::new();
    let mut values = Vec::new();
    for i in 0..winner_size {
        if let Some((p, member)) = searcher.extract(&polished, i) {
            values.push(member_objective(&member));
            weights.push(p);
            members.push(member);
        }
    }
    let evaluations: u64 =
        climbs.iter().map(|c| c.evaluations).sum::<u64>() + values.len() as u64;
    let ensemble = Ensemble::new(weights, members, kind, rho).map_err(OptError::State)?;

    let reduced = caratheodory_reduce(&ensemble, &values)?;
    let value = reduced
        .ensemble
        .weights()
        .iter()
        .zip(reduced.values.iter())
        .map(|(w, f)| w * f)
        .sum();

    Ok(EnsembleOptimum {
        ensemble: reduced.ensemble,
        member_values: reduced.values,
        value,
        direction: BoundDirection::Upper,
        diagnostics: Diagnostics {
            restarts: climbs.len() as u32,
            best_restart: best_idx as u32,
            converged: winner.converged,
            evaluations,
            member_converged: None,
        },
    })
}
