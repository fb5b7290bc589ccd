//! Scalar abstraction: the one trait bound the rest of the crate builds on.

use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Real scalar type for all numerics in this crate.
///
/// Blanket-implemented for any float-like type that can absorb f64
/// constants (f32 and f64 in practice). Tolerances and literal
/// coefficients are written as f64 and converted through [`real`].
pub trait Real:
    Float + FromPrimitive + Sum<Self> + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + Sum<Self> + Debug + Display + Send + Sync + 'static
{
}

/// Converts an f64 literal into the working scalar type.
///
/// Panics only if `T` cannot represent f64 values at all, which no
/// implementor shipped with this crate does.
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("scalar type must convert from f64")
}

/// Converts the working scalar back to f64, e.g. for report residuals.
pub fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
