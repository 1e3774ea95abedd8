//! Isometry perturbations for derivative-free hill climbing.
//!
//! The search variable is always a matrix with orthonormal columns. Proposals
//! left-multiply a pair of rows by a random SU(2) rotation, which preserves
//! the isometry exactly, so no re-projection is needed inside the loop.

use qstate_core::linalg::{creal, C64, CMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

/// Near-identity 2x2 unitary: rotation by `angle ~ step * |N(0,1)|` around a
/// uniformly random axis.
pub fn random_su2<R: Rng + ?Sized>(step: f64, rng: &mut R) -> [C64; 4] {
    let (mut x, mut y, mut z): (f64, f64, f64);
    loop {
        x = rng.sample(StandardNormal);
        y = rng.sample(StandardNormal);
        z = rng.sample(StandardNormal);
        let n = (x * x + y * y + z * z).sqrt();
        if n > 1e-12 {
            x /= n;
            y /= n;
            z /= n;
            break;
        }
    }
    let g: f64 = rng.sample(StandardNormal);
    let angle = step * g.abs();
    let (s, c) = angle.sin_cos();
    // cos(a) I + i sin(a) (x sx + y sy + z sz)
    [
        C64::new(c, s * z),
        C64::new(s * y, s * x),
        C64::new(-s * y, s * x),
        C64::new(c, -s * z),
    ]
}

/// Applies a 2x2 unitary to rows `i` and `j` of `iso` in place.
pub fn rotate_rows(iso: &mut CMatrix, i: usize, j: usize, u: &[C64; 4]) {
    for c in 0..iso.ncols() {
        let a = iso[(i, c)];
        let b = iso[(j, c)];
        iso[(i, c)] = u[0] * a + u[1] * b;
        iso[(j, c)] = u[2] * a + u[3] * b;
    }
}

/// Re-orthonormalizes the columns (QR polish). After thousands of exact
/// rotations the drift is ~1e-13; this cleans the returned witness.
pub fn polish_isometry(iso: &CMatrix) -> CMatrix {
    let cols = iso.ncols();
    let qr = iso.clone().qr();
    let q = qr.q();
    let r = qr.r();
    // keep the original column phases so the polish is a no-op up to rounding
    let phases: Vec<C64> = (0..cols)
        .map(|k| {
            let z = r[(k, k)];
            if z.norm() > 0.0 {
                z / creal(z.norm())
            } else {
                creal(1.0)
            }
        })
        .collect();
    let mut out = q;
    for k in 0..cols {
        let p = phases[k];
        for r_ in 0..out.nrows() {
            out[(r_, k)] *= p;
        }
    }
    out
}

/// Step-size schedule and stall bookkeeping shared by the climb loops.
pub struct StepControl {
    pub step: f64,
    stall: u32,
    stall_limit: u32,
}

impl StepControl {
    pub fn new(stall_limit: u32) -> Self {
        Self {
            step: 0.4,
            stall: 0,
            stall_limit,
        }
    }

    /// Stall window proportional to the iteration budget: small budgets bail
    /// out of flat landscapes quickly, large budgets keep polishing.
    pub fn for_budget(max_iterations: u32) -> Self {
        Self::new((max_iterations / 4).clamp(60, 300))
    }

    /// Records an accepted proposal. `significant` marks gains above the
    /// convergence tolerance.
    pub fn accepted(&mut self, significant: bool) {
        self.step = (self.step * 1.25).min(0.8);
        if significant {
            self.stall = 0;
        } else {
            self.stall += 1;
        }
    }

    pub fn rejected(&mut self) {
        self.step *= 0.975;
        self.stall += 1;
    }

    /// Converged once the step has collapsed or no significant gain has been
    /// seen for `stall_limit` proposals.
    pub fn converged(&self) -> bool {
        self.step < 1e-7 || self.stall >= self.stall_limit
    }
}
