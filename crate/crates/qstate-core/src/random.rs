//! Seeded Haar-random sampling of pure states, mixed states, unitaries and
//! isometries. Everything is a deterministic function of the seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::dims::Dims;
use crate::error::Result;
use crate::linalg::{creal, C64, CMatrix, CVector};
use crate::pure::PureState;

/// Derives an independent stream seed from a base seed and a tag path.
/// Splitmix64 steps keep distinct tag paths decorrelated.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(base ^ 0x6A09_E667_F3BC_C908);
    for &t in tags {
        state = splitmix64(state ^ splitmix64(t.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    state
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Matrix of independent standard complex Gaussians (Ginibre ensemble).
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary via QR of a Ginibre matrix with the standard
/// phase correction on the R diagonal.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(dim, dim, rng);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = CVector::from_iterator(
        dim,
        (0..dim).map(|k| {
            let z = r[(k, k)];
            if z.norm() > 0.0 {
                z / creal(z.norm())
            } else {
                creal(1.0)
            }
        }),
    );
    q * CMatrix::from_diagonal(&phases)
}

/// Random isometry: `rows x cols` matrix with orthonormal columns,
/// distributed as the first `cols` columns of a Haar unitary.
pub fn random_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rows, cols, rng);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = CVector::from_iterator(
        cols,
        (0..cols).map(|k| {
            let z = r[(k, k)];
            if z.norm() > 0.0 {
                z / creal(z.norm())
            } else {
                creal(1.0)
            }
        }),
    );
    q * CMatrix::from_diagonal(&phases)
}

/// Haar-random pure state: normalized vector of independent standard complex
/// Gaussians. Deterministic given the seed.
pub fn random_pure(dims: &Dims, seed: u64) -> PureState {
    let mut rng = rng_from_seed(seed);
    random_pure_with(dims, &mut rng)
}

pub fn random_pure_with<R: Rng + ?Sized>(dims: &Dims, rng: &mut R) -> PureState {
    let d = dims.total();
    loop {
        let mut amps = CVector::from_fn(d, |_, _| complex_gaussian(rng));
        let norm = amps.norm();
        if norm > 1e-12 {
            amps /= creal(norm);
            return PureState::new_unchecked(dims.clone(), amps);
        }
    }
}

/// Mixed state as the partial trace of a Haar-random pure state over an
/// ancilla of the given dimension. `ancilla_dim` = 1 yields pure states.
pub fn random_density(dims: &Dims, ancilla_dim: usize, seed: u64) -> Result<DensityMatrix> {
    if ancilla_dim < 1 {
        return Err(crate::error::StateError::InvalidArgument(
            "ancilla dimension must be >= 1".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    random_density_with(dims, ancilla_dim, &mut rng)
}

pub fn random_density_with<R: Rng + ?Sized>(
    dims: &Dims,
    ancilla_dim: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let mut ext = dims.factors().to_vec();
    ext.push(ancilla_dim);
    let big = Dims::new(ext)?;
    let psi = random_pure_with(&big, rng);
    let keep: Vec<usize> = (0..dims.len()).collect();
    psi.to_density().partial_trace(&keep)
}
