//! Dense square complex matrices and their real vectorization.
//!
//! Row-major storage, reference-based operators. Operators panic on
//! dimension mismatch (programmer error, like out-of-bounds indexing);
//! the fallible library operations validate dimensions and return
//! `CoreError` instead.

use crate::error::{CoreError, Result};
use crate::scalar::{real, Real};
use num_complex::Complex;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Square complex matrix with row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

/// Real coordinate vector of a vectorized matrix: interleaved
/// `[re_00, im_00, re_01, im_01, ...]` in row-major entry order.
#[derive(Clone, Debug, PartialEq)]
pub struct RealVector<T> {
    pub coords: Vec<T>,
}

impl<T: Real> RealVector<T> {
    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.coords.len(), other.coords.len(), "vector lengths differ");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::new(T::zero(), T::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from complex rows; all rows must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CoreError::DimensionMismatch(
                "matrix rows must all match the row count".into(),
            ));
        }
        Ok(Self { n, data: rows.iter().flatten().copied().collect() })
    }

    /// Builds a real-valued matrix from real rows.
    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CoreError::DimensionMismatch(
                "matrix rows must all match the row count".into(),
            ));
        }
        Ok(Self::from_fn(n, |i, j| Complex::new(rows[i][j], T::zero())))
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conjugate(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.n {
            t = t + self[(i, i)];
        }
        t
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.re * z.re + z.im * z.im)
            .sum::<T>()
            .sqrt()
    }

    /// Maximum absolute column sum, the operator 1-norm.
    pub fn one_norm(&self) -> T {
        let mut best = T::zero();
        for j in 0..self.n {
            let mut col = T::zero();
            for i in 0..self.n {
                col = col + self[(i, j)].norm();
            }
            if col > best {
                best = col;
            }
        }
        best
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn max_imag_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.im.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn real_part(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| Complex::new(z.re, T::zero())).collect(),
        }
    }

    pub fn imag_part(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| Complex::new(z.im, T::zero())).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `||X + X^dagger||_F <= tol * max(1, ||X||_F)`.
    pub fn is_anti_hermitian(&self, tol: T) -> bool {
        let defect = (self + &self.adjoint()).frobenius_norm();
        defect <= tol * T::one().max(self.frobenius_norm())
    }

    /// `||X - X^dagger||_F <= tol * max(1, ||X||_F)`.
    pub fn is_hermitian(&self, tol: T) -> bool {
        let defect = (self - &self.adjoint()).frobenius_norm();
        defect <= tol * T::one().max(self.frobenius_norm())
    }

    /// `||X^dagger X - I||_F <= tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        let gram = &self.adjoint() * self;
        (&gram - &Self::identity(self.n)).frobenius_norm() <= tol
    }

    /// `|tr X| <= tol * max(1, ||X||_F)`.
    pub fn is_traceless(&self, tol: T) -> bool {
        self.trace().norm() <= tol * T::one().max(self.frobenius_norm())
    }

    /// Interleaved real coordinates `[re_00, im_00, re_01, im_01, ...]`.
    pub fn vectorize(&self) -> RealVector<T> {
        let mut coords = Vec::with_capacity(2 * self.n * self.n);
        for z in &self.data {
            coords.push(z.re);
            coords.push(z.im);
        }
        RealVector { coords }
    }

    /// Inverse of [`vectorize`](Self::vectorize) for an n-by-n matrix.
    pub fn from_vectorized(n: usize, v: &RealVector<T>) -> Result<Self> {
        if v.coords.len() != 2 * n * n {
            return Err(CoreError::DimensionMismatch(format!(
                "vectorized length {} does not match 2*{n}^2",
                v.coords.len()
            )));
        }
        let data = v
            .coords
            .chunks_exact(2)
            .map(|c| Complex::new(c[0], c[1]))
            .collect();
        Ok(Self { n, data })
    }

    /// Converts entries to f64, for report serialization.
    pub fn to_f64(&self) -> ComplexMatrix<f64> {
        ComplexMatrix::from_fn(self.n, |i, j| {
            Complex::new(
                self[(i, j)].re.to_f64().unwrap_or(f64::NAN),
                self[(i, j)].im.to_f64().unwrap_or(f64::NAN),
            )
        })
    }
}

/// `XY - YX`; errors on dimension mismatch.
pub fn commutator<T: Real>(
    x: &ComplexMatrix<T>,
    y: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    if x.n() != y.n() {
        return Err(CoreError::DimensionMismatch(format!(
            "commutator of {}x{} with {}x{}",
            x.n(),
            x.n(),
            y.n(),
            y.n()
        )));
    }
    Ok(&(x * y) - &(y * x))
}

/// Real Frobenius inner product `Re tr(X^dagger Y)`; errors on mismatch.
///
/// Equals the Euclidean dot product of the vectorizations, so the same
/// tolerance scale applies to matrices and their coordinate vectors.
pub fn frobenius_inner<T: Real>(x: &ComplexMatrix<T>, y: &ComplexMatrix<T>) -> Result<T> {
    if x.n() != y.n() {
        return Err(CoreError::DimensionMismatch(format!(
            "inner product of {}x{} with {}x{}",
            x.n(),
            x.n(),
            y.n(),
            y.n()
        )));
    }
    let mut acc = T::zero();
    for (a, b) in x.data().iter().zip(y.data()) {
        acc = acc + a.re * b.re + a.im * b.im;
    }
    Ok(acc)
}

/// Convenience complex literal.
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(real(re), real(im))
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|&a| -a).collect() }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}
