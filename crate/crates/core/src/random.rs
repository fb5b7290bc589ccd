//! Seeded random matrix sampling.
//!
//! All sampling draws f64 values, then converts to the working scalar, so
//! a seed produces one stream regardless of scalar type. ChaCha8 keeps
//! streams portable across platforms.

use crate::linalg::solve::determinant;
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Real};
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

// Re-exported so callers can name the generator type without depending
// on the rand_chacha crate themselves.
pub use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for a derived stream, used to make work items independent of
/// worker scheduling: item `k` always sees stream `(seed, k)`.
pub fn rng_from_seed_and_index(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

pub fn standard_normal<T: Real>(rng: &mut impl Rng) -> T {
    real(rng.sample::<f64, _>(StandardNormal))
}

pub fn uniform<T: Real>(rng: &mut impl Rng, lo: f64, hi: f64) -> T {
    real(lo + (hi - lo) * rng.gen::<f64>())
}

/// Matrix of independent real standard normals.
pub fn gaussian_real_matrix<T: Real>(n: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(n, |_, _| Complex::new(standard_normal(rng), T::zero()))
}

/// Matrix of independent complex standard normals.
pub fn gaussian_complex_matrix<T: Real>(n: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(n, |_, _| Complex::new(standard_normal(rng), standard_normal(rng)))
}

/// Modified Gram-Schmidt QR, returning Q with unit columns; the R diagonal
/// is positive by construction, which is the convention that makes the
/// Gaussian-QR recipe produce the invariant distribution.
fn mgs_q<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = a.n();
    let mut cols: Vec<Vec<Complex<T>>> = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            // Two projection passes keep orthogonality near machine epsilon.
            for _ in 0..2 {
                let mut proj = Complex::new(T::zero(), T::zero());
                for i in 0..n {
                    proj = proj + cols[k][i].conj() * cols[j][i];
                }
                for i in 0..n {
                    let sub = cols[k][i] * proj;
                    cols[j][i] = cols[j][i] - sub;
                }
            }
        }
        let norm = cols[j]
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt();
        for z in &mut cols[j] {
            *z = z.unscale(norm);
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Haar-distributed rotation in SO(n): QR of a real Gaussian matrix with
/// positive R diagonal, then one column flip if the determinant is -1.
pub fn haar_orthogonal<T: Real>(n: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    let mut q = mgs_q(&gaussian_real_matrix::<T>(n, rng));
    let det = determinant(&q).expect("orthogonal matrices are invertible");
    if det.re < T::zero() {
        for i in 0..n {
            q[(i, n - 1)] = -q[(i, n - 1)];
        }
    }
    q
}

/// Random element of SU(n): QR of a complex Gaussian matrix (Haar on the
/// unitary group), then the last column absorbs the determinant phase.
pub fn random_special_unitary<T: Real>(n: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    let mut q = mgs_q(&gaussian_complex_matrix::<T>(n, rng));
    let det = determinant(&q).expect("unitary matrices are invertible");
    let phase = det.unscale(det.norm());
    for i in 0..n {
        q[(i, n - 1)] = q[(i, n - 1)] * phase.conj();
    }
    q
}

/// Exactly Haar-distributed SU(2) element via a normalized Gaussian
/// quaternion.
pub fn haar_su2<T: Real>(rng: &mut impl Rng) -> ComplexMatrix<T> {
    let raw: [T; 4] = [
        standard_normal(rng),
        standard_normal(rng),
        standard_normal(rng),
        standard_normal(rng),
    ];
    let norm = raw.iter().map(|&x| x * x).sum::<T>().sqrt();
    let mu = Complex::new(raw[0] / norm, raw[1] / norm);
    let nu = Complex::new(raw[2] / norm, raw[3] / norm);
    ComplexMatrix::from_rows(&[vec![mu, nu], vec![-nu.conj(), mu.conj()]]).expect("static 2x2")
}

/// Random traceless anti-Hermitian matrix, Gaussian in the algebra.
pub fn random_anti_hermitian_traceless<T: Real>(
    n: usize,
    rng: &mut impl Rng,
) -> ComplexMatrix<T> {
    let g = gaussian_complex_matrix::<T>(n, rng);
    let mut x = (&g - &g.adjoint()).scale(real(0.5));
    let tr = x.trace().unscale(real(n as f64));
    for i in 0..n {
        x[(i, i)] = x[(i, i)] - tr;
    }
    x
}
