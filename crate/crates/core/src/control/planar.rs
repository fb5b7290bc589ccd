//! Planar system p1' = p2^2, p2' = u: accessible (p1 can only grow)
//! but not controllable from any point, a counterexample separating the
//! two notions.

use crate::control::ControlLaw;
use crate::error::{CoreError, Result};
use crate::scalar::{real, Real};

const STEP: f64 = 1e-3;

/// Integrates the planar system under the single-channel law up to
/// `t_final` (zero input past the law's end) with a classical 4th-order
/// step. The integrand is polynomial in t on each interval, so the
/// fixed step is exact up to rounding; p1 never decreases because its
/// velocity is a square.
pub fn r2_example<T: Real>(
    law: &ControlLaw<T>,
    t_final: T,
    start: (T, T),
) -> Result<(T, T)> {
    if law.channels() != 1 {
        return Err(CoreError::DimensionMismatch(
            "the planar example takes a single-channel law".into(),
        ));
    }
    if !(t_final.is_finite() && t_final >= T::zero()) {
        return Err(CoreError::InvalidInput(
            "final time must be nonnegative and finite".into(),
        ));
    }
    if !(start.0.is_finite() && start.1.is_finite()) {
        return Err(CoreError::NonFinite("start point".into()));
    }

    let mut state = start;
    let mut t = T::zero();
    // Integrate interval by interval so the input is constant within
    // every integration step.
    let mut cuts: Vec<T> = law
        .breakpoints()
        .iter()
        .copied()
        .filter(|&b| b > T::zero() && b < t_final)
        .collect();
    cuts.push(t_final);
    for cut in cuts {
        let u = law.at(t).map_or(T::zero(), |v| v[0]);
        state = advance(state, u, cut - t);
        t = cut;
    }
    Ok(state)
}

/// Runge-Kutta 4 over a span with constant input.
fn advance<T: Real>(mut state: (T, T), u: T, span: T) -> (T, T) {
    if span <= T::zero() {
        return state;
    }
    let steps = (crate::scalar::as_f64(span) / STEP).ceil().max(1.0) as usize;
    let h = span / real(steps as f64);
    let f = |(_, p2): (T, T)| (p2 * p2, u);
    let half = real::<T>(0.5);
    let two = real::<T>(2.0);
    let sixth = T::one() / real(6.0);
    for _ in 0..steps {
        let k1 = f(state);
        let k2 = f((state.0 + half * h * k1.0, state.1 + half * h * k1.1));
        let k3 = f((state.0 + half * h * k2.0, state.1 + half * h * k2.1));
        let k4 = f((state.0 + h * k3.0, state.1 + h * k3.1));
        state = (
            state.0 + h * sixth * (k1.0 + two * k2.0 + two * k3.0 + k4.0),
            state.1 + h * sixth * (k1.1 + two * k2.1 + two * k3.1 + k4.1),
        );
    }
    state
}
