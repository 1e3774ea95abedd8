//! Dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Amplitudes below this are treated as zero when fixing eigenvector phases.
const PHASE_EPS: f64 = 1e-12;
/// Eigenvalues at or below this count as zero when computing ranks.
pub const RANK_EPS: f64 = 1e-12;

pub fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

pub fn cone() -> C64 {
    C64::new(1.0, 0.0)
}

pub fn creal(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// (m + m^dag) / 2.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Max entrywise |a - b|.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    let mut max = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        max = max.max((x - y).norm());
    }
    max
}

/// Max entrywise deviation from Hermiticity.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

/// Rotates a vector so that its first component above `PHASE_EPS` in modulus
/// becomes real positive. Deterministic convention for eigenvector output.
pub fn fix_phase(v: &mut CVector) {
    for k in 0..v.len() {
        let a = v[k];
        if a.norm() > PHASE_EPS {
            let phase = a / creal(a.norm());
            let corr = phase.conj();
            for x in v.iter_mut() {
                *x *= corr;
            }
            return;
        }
    }
}

fn lex_less(a: &CVector, b: &CVector) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x.re != y.re {
            return x.re < y.re;
        }
        if x.im != y.im {
            return x.im < y.im;
        }
    }
    false
}

/// Hermitian eigendecomposition with eigenvalues sorted in descending order
/// and phase-fixed eigenvector columns. Ties within `RANK_EPS` are broken by
/// lexicographic order of the phase-fixed eigenvectors so the output is a
/// deterministic function of the input.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigh needs a square matrix");
    if n == 1 {
        return (vec![m[(0, 0)].re], CMatrix::identity(1, 1));
    }
    let se = SymmetricEigen::try_new(hermitize(m), 1.0e-14, 0)
        .expect("Hermitian eigendecomposition did not converge");
    let mut pairs: Vec<(f64, CVector)> = (0..n)
        .map(|k| {
            let mut col = se.eigenvectors.column(k).into_owned();
            fix_phase(&mut col);
            (se.eigenvalues[k], col)
        })
        .collect();
    pairs.sort_by(|(la, va), (lb, vb)| {
        if (la - lb).abs() <= RANK_EPS {
            if lex_less(va, vb) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        } else {
            lb.partial_cmp(la).unwrap()
        }
    });
    let vals: Vec<f64> = pairs.iter().map(|(l, _)| *l).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (k, (_, v)) in pairs.iter().enumerate() {
        vecs.set_column(k, v);
    }
    (vals, vecs)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    if n == 1 {
        return vec![m[(0, 0)].re];
    }
    let se = SymmetricEigen::try_new(hermitize(m), 1.0e-14, 0)
        .expect("Hermitian eigendecomposition did not converge");
    let mut vals: Vec<f64> = se.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// Principal square root of a PSD Hermitian matrix. Small negative
/// eigenvalues from rounding are clipped to zero.
pub fn sqrt_psd(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = eigh(m);
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&l| creal(l.max(0.0).sqrt())),
    ));
    &vecs * d * vecs.adjoint()
}

/// Shannon entropy in bits of the spectrum of a density matrix. Eigenvalues
/// are clamped to [0, 1] and renormalized to unit sum so rounding in the
/// trace cannot push the entropy above log2(d); 0 log 0 := 0.
pub fn spectrum_entropy_bits(vals: &[f64]) -> f64 {
    let clamped: Vec<f64> = vals.iter().map(|&l| l.clamp(0.0, 1.0)).collect();
    let sum: f64 = clamped.iter().sum();
    if sum <= 0.0 {
        return 0.0;
    }
    let mut s = 0.0;
    for l in clamped {
        let l = l / sum;
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    s
}
