//! Maximization over POVMs via rank-1 effect parametrization.
//!
//! A POVM with `m` rank-1 outcomes on C^d is the row family of an m x d
//! isometry V (V^dag V = I, E_i = row_i^dag row_i). The search runs
//! independent hill climbs for every outcome count m in `d..=n_outcomes`;
//! enlarging `n_outcomes` therefore only adds climbs, which makes the
//! returned value monotone in the outcome budget by construction. Each climb
//! derives its random stream from (seed, m, restart), so results are
//! reproducible and independent of scheduling.

use qstate_core::linalg::{creal, CMatrix};
use qstate_core::random::{derive_seed, random_isometry, rng_from_seed};
use qstate_core::Povm;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::config::{BoundDirection, Diagnostics, OptError, OptimizerConfig, Result};
use crate::perturb::{polish_isometry, random_su2, rotate_rows, StepControl};

const POVM_STREAM_TAG: u64 = 0x504f_564d; // "POVM"

#[derive(Debug, Clone)]
pub struct PovmOptimum {
    pub povm: Povm,
    pub value: f64,
    pub direction: BoundDirection,
    pub diagnostics: Diagnostics,
}

struct ClimbResult {
    iso: CMatrix,
    value: f64,
    evaluations: u64,
    converged: bool,
}

fn climb_povm<F>(mut iso: CMatrix, objective: &F, config: &OptimizerConfig, rng: &mut ChaCha12Rng) -> ClimbResult
where
    F: Fn(&Povm) -> f64 + Sync,
{
    let m = iso.nrows();
    let mut best = objective(&Povm::from_isometry_rows(&iso));
    let mut evaluations = 1u64;
    if m < 2 {
        return ClimbResult {
            iso,
            value: best,
            evaluations,
            converged: true,
        };
    }
    let mut ctrl = StepControl::for_budget(config.max_iterations);
    let mut converged = false;
    for _ in 0..config.max_iterations {
        let i = rand::Rng::random_range(rng, 0..m - 1);
        let j = rand::Rng::random_range(rng, i + 1..m);
        let u = random_su2(ctrl.step, rng);
        let saved_i: Vec<_> = (0..iso.ncols()).map(|c| iso[(i, c)]).collect();
        let saved_j: Vec<_> = (0..iso.ncols()).map(|c| iso[(j, c)]).collect();
        rotate_rows(&mut iso, i, j, &u);
        let val = objective(&Povm::from_isometry_rows(&iso));
        evaluations += 1;
        if val > best {
            ctrl.accepted(val - best > config.tolerance);
            best = val;
        } else {
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

/// Identity-embedding start: computational-basis projectors padded with zero
/// outcomes. Present in every stratum so structured optima (basis
/// measurements) are found exactly.
fn identity_init(m: usize, d: usize) -> CMatrix {
    let mut iso = CMatrix::zeros(m, d);
    for k in 0..d {
        iso[(k, k)] = creal(1.0);
    }
    iso
}

/// Maximizes `objective` over rank-1 POVMs with up to `n_outcomes` outcomes
/// on a `local_dim`-dimensional factor. The returned value is a lower bound
/// of the true supremum; the witness re-evaluates to exactly the reported
/// value.
pub fn optimize_povm<F>(
    objective: F,
    local_dim: usize,
    n_outcomes: usize,
    config: &OptimizerConfig,
) -> Result<PovmOptimum>
where
    F: Fn(&Povm) -> f64 + Sync,
{
    config.validate()?;
    if local_dim < 1 {
        return Err(OptError::InvalidArgument("local_dim must be >= 1".into()));
    }
    if n_outcomes < local_dim {
        return Err(OptError::InvalidArgument(format!(
            "n_outcomes {n_outcomes} < local_dim {local_dim}"
        )));
    }

    // climb plan: (outcome count, restart index); restart 0 is the identity
    // start, the rest are Haar-random isometries
    let mut plan: Vec<(usize, u32)> = Vec::new();
    for m in local_dim..=n_outcomes {
        for j in 0..=config.restarts {
            plan.push((m, j));
        }
    }

    let results: Vec<ClimbResult> = plan
        .par_iter()
        .map(|&(m, j)| {
            let mut rng = rng_from_seed(derive_seed(
                config.seed,
                &[POVM_STREAM_TAG, m as u64, j as u64],
            ));
            let init = if j == 0 {
                identity_init(m, local_dim)
            } else {
                random_isometry(m, local_dim, &mut rng)
            };
            climb_povm(init, &objective, config, &mut rng)
        })
        .collect();

    let mut best_idx = 0usize;
    for (k, r) in results.iter().enumerate() {
        if r.value > results[best_idx].value {
            best_idx = k;
        }
    }
    let winner = &results[best_idx];
    let povm = Povm::from_isometry_rows(&polish_isometry(&winner.iso));
    // the reported value is the objective at the polished witness
    let value = objective(&povm);
    let evaluations: u64 = results.iter().map(|r| r.evaluations).sum::<u64>() + 1;

    Ok(PovmOptimum {
        povm,
        value,
        direction: BoundDirection::Lower,
        diagnostics: Diagnostics {
            restarts: results.len() as u32,
            best_restart: best_idx as u32,
            converged: winner.converged,
            evaluations,
            member_converged: None,
        },
    })
}
