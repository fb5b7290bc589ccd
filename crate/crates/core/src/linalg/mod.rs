//! Dense numerical kernels: LU solves, Jacobi eigendecompositions,
//! one-sided Jacobi singular values, and matrix exponentials/logarithms.

pub mod eigen;
pub mod expm;
pub mod solve;
pub mod svd;

pub use eigen::{hermitian_eigen, symmetric_eigen_real};
pub use expm::{expm, expm_pade, logm_hermitian_pd, logm_series};
pub use solve::{determinant, inverse, solve};
pub use svd::{rank_of_family, rank_of_rows, singular_values_of_rows};
