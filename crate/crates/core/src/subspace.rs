//! Real-linear subspaces of matrix space with orthonormal bases.
//!
//! The inner product is the real Frobenius pairing, so coefficients are
//! always real even when basis matrices are complex; that is the right
//! notion for real Lie algebras of complex matrices such as su(n).

use crate::error::{CoreError, Result};
use crate::matrix::{frobenius_inner, ComplexMatrix};
use crate::scalar::{real, Real};
use crate::tol;

/// Subspace spanned by an orthonormal family of n-by-n matrices.
///
/// Invariants kept by construction: every basis element has unit Frobenius
/// norm, the Gram matrix is the identity to [`tol::ORTHONORMALITY`], and
/// all elements share the ambient dimension.
#[derive(Clone, Debug)]
pub struct Subspace<T> {
    ambient_n: usize,
    basis: Vec<ComplexMatrix<T>>,
}

impl<T: Real> Subspace<T> {
    /// Orthonormalizes `span` by modified Gram-Schmidt, dropping directions
    /// whose remainder falls below `drop_tol * max(1, ||candidate||)`.
    ///
    /// `drop_tol` defaults to [`tol::RANK_REL`] via [`Subspace::from_span`].
    pub fn from_span_with_tol(
        ambient_n: usize,
        span: &[ComplexMatrix<T>],
        drop_tol: T,
    ) -> Result<Self> {
        let mut s = Subspace { ambient_n, basis: Vec::new() };
        for m in span {
            s.try_absorb(m, drop_tol)?;
        }
        Ok(s)
    }

    pub fn from_span(ambient_n: usize, span: &[ComplexMatrix<T>]) -> Result<Self> {
        Self::from_span_with_tol(ambient_n, span, real(tol::RANK_REL))
    }

    /// Empty subspace of the ambient matrix space.
    pub fn empty(ambient_n: usize) -> Self {
        Subspace { ambient_n, basis: Vec::new() }
    }

    /// Orthogonalizes `m` against the basis and appends the normalized
    /// remainder if it clears `drop_tol * max(1, ||m||)`. Returns whether
    /// the dimension grew.
    pub fn try_absorb(&mut self, m: &ComplexMatrix<T>, drop_tol: T) -> Result<bool> {
        if m.n() != self.ambient_n {
            return Err(CoreError::DimensionMismatch(format!(
                "element is {}x{} but the ambient space is {}x{}",
                m.n(),
                m.n(),
                self.ambient_n,
                self.ambient_n
            )));
        }
        if !m.is_finite() {
            return Err(CoreError::NonFinite("subspace element".into()));
        }
        let mut v = m.clone();
        // Two MGS passes; the second removes the O(eps) residue of the first.
        for _ in 0..2 {
            for b in &self.basis {
                let coeff = frobenius_inner(b, &v)?;
                v = &v - &b.scale(coeff);
            }
        }
        let norm = v.frobenius_norm();
        if norm <= drop_tol * T::one().max(m.frobenius_norm()) {
            return Ok(false);
        }
        self.basis.push(v.scale(norm.recip()));
        Ok(true)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn basis(&self) -> &[ComplexMatrix<T>] {
        &self.basis
    }

    /// Real coordinates of `x` in the orthonormal basis.
    pub fn coords(&self, x: &ComplexMatrix<T>) -> Result<Vec<T>> {
        self.basis.iter().map(|b| frobenius_inner(b, x)).collect()
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        if x.n() != self.ambient_n {
            return Err(CoreError::DimensionMismatch(
                "projection argument has the wrong ambient dimension".into(),
            ));
        }
        let mut p = ComplexMatrix::zeros(self.ambient_n);
        for b in &self.basis {
            p = &p + &b.scale(frobenius_inner(b, x)?);
        }
        Ok(p)
    }

    /// Distance from `x` to the subspace: `||x - project(x)||_F`.
    pub fn projection_defect(&self, x: &ComplexMatrix<T>) -> Result<T> {
        Ok((x - &self.project(x)?).frobenius_norm())
    }

    /// Membership test: defect at most `tol * max(1, ||x||_F)`.
    pub fn contains(&self, x: &ComplexMatrix<T>, tol: T) -> Result<bool> {
        Ok(self.projection_defect(x)? <= tol * T::one().max(x.frobenius_norm()))
    }

    /// Largest deviation of the basis Gram matrix from the identity.
    pub fn gram_defect(&self) -> T {
        let mut worst = T::zero();
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let g = frobenius_inner(a, b).expect("same ambient dimension");
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    /// Concatenation of two subspaces of one ambient space, re-orthonormalized.
    pub fn direct_sum(&self, other: &Subspace<T>) -> Result<Subspace<T>> {
        if self.ambient_n != other.ambient_n {
            return Err(CoreError::DimensionMismatch(
                "direct sum of subspaces with different ambient dimensions".into(),
            ));
        }
        let mut all: Vec<ComplexMatrix<T>> = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_span(self.ambient_n, &all)
    }
}
