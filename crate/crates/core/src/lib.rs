//! Numerical toolkit for bilinear control systems on matrix Lie groups:
//! Lie-algebra closures and rank conditions, Cartan (KAK) decompositions,
//! and two-factor sub-Riemannian geodesics, with seeded sampling throughout.
//!
//! Everything is generic over the real scalar type `T: Real` (f64, f32);
//! the `Matrix64`-style aliases below pin the common double-precision case.

pub mod cartan;
pub mod control;
pub mod error;
pub mod geodesics;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod random;
pub mod report;
pub mod scalar;
pub mod su2;
pub mod subspace;
pub mod tol;

pub use error::{CoreError, Result};
pub use matrix::{ComplexMatrix, RealVector};
pub use scalar::{real, Real};

/// Double-precision complex scalar.
pub type C64 = num_complex::Complex<f64>;
/// Single-precision complex scalar.
pub type C32 = num_complex::Complex<f32>;
/// Double-precision square complex matrix.
pub type Matrix64 = ComplexMatrix<f64>;
/// Single-precision square complex matrix.
pub type Matrix32 = ComplexMatrix<f32>;
/// Double-precision subspace of matrix space.
pub type Subspace64 = subspace::Subspace<f64>;
/// Double-precision Cartan pair.
pub type CartanPair64 = cartan::CartanPair<f64>;
