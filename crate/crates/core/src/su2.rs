//! The anti-Hermitian su(2) basis used throughout the crate, and the
//! unit-quaternion chart on SU(2).
//!
//! The generators are normalized so that [x, y] = z, [y, z] = x,
//! [z, x] = y, and so that exp(t sigma_x) has period 4 pi.

use crate::error::{CoreError, Result};
use crate::matrix::{c, ComplexMatrix};
use crate::scalar::Real;
use num_complex::Complex;

/// `(1/2) [[0, 1], [-1, 0]]`, real antisymmetric.
pub fn sigma_x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(0.5, 0.0)],
        vec![c(-0.5, 0.0), c(0.0, 0.0)],
    ])
    .expect("static 2x2")
}

/// `(i/2) [[0, 1], [1, 0]]`.
pub fn sigma_y<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(0.0, 0.5)],
        vec![c(0.0, 0.5), c(0.0, 0.0)],
    ])
    .expect("static 2x2")
}

/// `(i/2) [[1, 0], [0, -1]]`, diagonal.
pub fn sigma_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.5), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, -0.5)],
    ])
    .expect("static 2x2")
}

/// Closed form of `exp(angle * sigma_z)`: `diag(e^{i angle/2}, e^{-i angle/2})`.
pub fn exp_sigma_z<T: Real>(angle: T) -> ComplexMatrix<T> {
    let half = angle / (T::one() + T::one());
    ComplexMatrix::diagonal(&[
        Complex::from_polar(T::one(), half),
        Complex::from_polar(T::one(), -half),
    ])
}

/// Closed form of `exp(angle * sigma_x)`, a real rotation by `angle/2`.
pub fn exp_sigma_x<T: Real>(angle: T) -> ComplexMatrix<T> {
    let half = angle / (T::one() + T::one());
    let (s, c0) = half.sin_cos();
    ComplexMatrix::from_rows(&[
        vec![Complex::new(c0, T::zero()), Complex::new(s, T::zero())],
        vec![Complex::new(-s, T::zero()), Complex::new(c0, T::zero())],
    ])
    .expect("static 2x2")
}

/// Reads the unit-quaternion coordinates (mu, nu) off an SU(2) matrix
/// `[[mu, nu], [-conj(nu), conj(mu)]]`.
///
/// Errors if the matrix is not 2x2, not unitary to `tol`, or not of the
/// displayed form to `tol`.
pub fn quaternion_coords<T: Real>(
    u: &ComplexMatrix<T>,
    tol: T,
) -> Result<(Complex<T>, Complex<T>)> {
    if u.n() != 2 {
        return Err(CoreError::DimensionMismatch(format!(
            "quaternion coordinates need a 2x2 matrix, got {}x{}",
            u.n(),
            u.n()
        )));
    }
    if !u.is_unitary(tol) {
        return Err(CoreError::InvalidInput(
            "quaternion coordinates need a unitary matrix".into(),
        ));
    }
    let (mu, nu) = (u[(0, 0)], u[(0, 1)]);
    let form_defect = (u[(1, 0)] + nu.conj()).norm().hypot((u[(1, 1)] - mu.conj()).norm());
    if form_defect > tol {
        return Err(CoreError::InvalidInput(
            "matrix is not in the SU(2) quaternion form (is its determinant 1?)".into(),
        ));
    }
    Ok((mu, nu))
}

/// Builds `[[mu, nu], [-conj(nu), conj(mu)]]` from unit-quaternion
/// coordinates; errors unless |mu|^2 + |nu|^2 = 1 to `tol`.
pub fn from_quaternion_coords<T: Real>(
    mu: Complex<T>,
    nu: Complex<T>,
    tol: T,
) -> Result<ComplexMatrix<T>> {
    let r = mu.norm_sqr() + nu.norm_sqr();
    if (r - T::one()).abs() > tol {
        return Err(CoreError::InvalidInput(
            "quaternion coordinates must lie on the unit 3-sphere".into(),
        ));
    }
    ComplexMatrix::from_rows(&[vec![mu, nu], vec![-nu.conj(), mu.conj()]])
}
