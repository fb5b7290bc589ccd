//! Complex LU factorization with partial pivoting, and the solves,
//! inverses, and determinants built on it.

use crate::error::{CoreError, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Real};
use num_complex::Complex;

/// LU factorization `P A = L U` with row pivoting.
pub struct Lu<T> {
    n: usize,
    data: Vec<Complex<T>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Factors `a`; errors if a pivot falls below `n * eps * max|a_ij|`.
pub fn lu_factor<T: Real>(a: &ComplexMatrix<T>) -> Result<Lu<T>> {
    if !a.is_finite() {
        return Err(CoreError::NonFinite("LU factorization input".into()));
    }
    let n = a.n();
    let mut m: Vec<Complex<T>> = a.data().to_vec();
    let mut pivots = Vec::with_capacity(n);
    let mut swaps = 0usize;
    let floor = real::<T>(n as f64) * T::epsilon() * a.max_abs();

    for k in 0..n {
        let mut p = k;
        let mut best = m[k * n + k].norm();
        for i in k + 1..n {
            let mag = m[i * n + k].norm();
            if mag > best {
                best = mag;
                p = i;
            }
        }
        if best <= floor {
            return Err(CoreError::Singular(format!(
                "pivot {:e} at column {k} is below the singularity floor",
                crate::scalar::as_f64(best)
            )));
        }
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            swaps += 1;
        }
        pivots.push(p);
        let pivot = m[k * n + k];
        for i in k + 1..n {
            let factor = m[i * n + k] / pivot;
            m[i * n + k] = factor;
            for j in k + 1..n {
                let sub = factor * m[k * n + j];
                m[i * n + j] = m[i * n + j] - sub;
            }
        }
    }
    Ok(Lu { n, data: m, pivots, swaps })
}

impl<T: Real> Lu<T> {
    /// Solves `A x = b` in place for one right-hand side.
    pub fn solve_in_place(&self, b: &mut [Complex<T>]) {
        assert_eq!(b.len(), self.n, "right-hand side length differs");
        for (k, &p) in self.pivots.iter().enumerate() {
            b.swap(k, p);
        }
        for i in 1..self.n {
            let mut acc = b[i];
            for j in 0..i {
                acc = acc - self.data[i * self.n + j] * b[j];
            }
            b[i] = acc;
        }
        for i in (0..self.n).rev() {
            let mut acc = b[i];
            for j in i + 1..self.n {
                acc = acc - self.data[i * self.n + j] * b[j];
            }
            b[i] = acc / self.data[i * self.n + i];
        }
    }

    pub fn determinant(&self) -> Complex<T> {
        let mut d = Complex::new(T::one(), T::zero());
        for i in 0..self.n {
            d = d * self.data[i * self.n + i];
        }
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

/// Solves `A X = B` column by column.
pub fn solve<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if a.n() != b.n() {
        return Err(CoreError::DimensionMismatch(format!(
            "solve with {}x{} system and {}x{} right-hand side",
            a.n(),
            a.n(),
            b.n(),
            b.n()
        )));
    }
    let lu = lu_factor(a)?;
    let n = a.n();
    let mut x = ComplexMatrix::zeros(n);
    let mut col = vec![Complex::new(T::zero(), T::zero()); n];
    for j in 0..n {
        for i in 0..n {
            col[i] = b[(i, j)];
        }
        lu.solve_in_place(&mut col);
        for i in 0..n {
            x[(i, j)] = col[i];
        }
    }
    Ok(x)
}

pub fn inverse<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    solve(a, &ComplexMatrix::identity(a.n()))
}

pub fn determinant<T: Real>(a: &ComplexMatrix<T>) -> Result<Complex<T>> {
    Ok(lu_factor(a)?.determinant())
}
