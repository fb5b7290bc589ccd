//! Error type shared by every fallible operation in the crate.

use thiserror::Error;

/// Failure modes of the numerical operations.
///
/// Every message names the violated condition so callers can surface it
/// directly; none of the variants carry partial results.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Operands have incompatible or unexpected dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An input contains NaN or infinity.
    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// An input violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An iterative method exceeded its iteration cap.
    #[error("failed to converge: {0}")]
    Convergence(String),

    /// A matrix required to be invertible is numerically singular.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// Eigenvalue clustering prevented a unique decomposition.
    #[error("degenerate spectrum: {0}")]
    Degeneracy(String),

    /// A discrete trajectory step is outside the logarithm's safe region.
    #[error("step too large for the matrix logarithm: {0}")]
    StepTooLarge(String),
}

pub type Result<V> = std::result::Result<V, CoreError>;
