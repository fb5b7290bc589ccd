//! Heuristic upper bound on the infimizing time: the smallest horizon
//! at which a searched control law lands within `eps` of the target.
//!
//! The estimate brackets the horizon by doubling, then bisects; each
//! horizon is scored by random multi-segment shooting followed by
//! coordinate-descent refinement of the best law. It is an upper bound
//! on the true infimum, never a certificate of optimality.

use crate::control::{propagate, Bound, ControlLaw, ControlSystem};
use crate::error::{CoreError, Result};
use crate::matrix::ComplexMatrix;
use crate::random::{rng_from_seed_and_index, uniform};
use crate::scalar::{real, Real};
use crate::tol;
use serde::Serialize;

/// Outcome of the search. When `reached` is false the budget ran out
/// before any law got within tolerance; `t_est` and `achieved_error`
/// then describe the best attempt instead of an upper bound.
#[derive(Debug, Clone, Serialize)]
pub struct MinTimeResult<T: Real> {
    pub reached: bool,
    pub t_est: T,
    pub achieved_error: T,
    pub tolerance: T,
    pub simulations: usize,
}

const SEGMENTS: usize = 4;
const FIRST_HORIZON: f64 = 0.125;
const MAX_HORIZON: f64 = 64.0;
/// Relative bisection width at which the bracket is tight enough.
const BRACKET_REL: f64 = 0.02;
/// Per-coordinate line-search grid, as fractions of the search radius;
/// endpoints first because near-optimal laws tend to saturate.
const LINE_GRID: [f64; 7] = [1.0, -1.0, 2.0 / 3.0, -2.0 / 3.0, 1.0 / 3.0, -1.0 / 3.0, 0.0];
/// Shrinking search radii for the refinement rounds, as rung fractions.
const ROUND_RADII: [f64; 3] = [1.0, 1.0 / 6.0, 1.0 / 36.0];
/// Smallest amplitude rung searched below the bound.
const RUNG_FLOOR: f64 = 1.0 / 32.0;
/// Simulations granted to each (horizon, rung) search, budget allowing.
const PER_RUNG_FLOOR: usize = 40;

/// Estimates the first horizon whose reachable set touches the target
/// ball of radius `eps` in Frobenius norm.
///
/// Deterministic for a fixed seed, independent of `workers` (each
/// shooting candidate owns a stream derived from the seed and its
/// index; merging is a min-reduction).
///
/// Each horizon is searched at a ladder of amplitude rungs: the bound
/// itself plus every power of two below it down to 1/32. Rung searches
/// key their random streams by the rung value, so when one bound is a
/// power of two not exceeding another, the larger bound runs a strict
/// superset of the smaller bound's searches; raising the bound through
/// such pairs can then never raise the estimate.
pub fn min_time_estimate<T: Real>(
    sys: &ControlSystem<T>,
    target: &ComplexMatrix<T>,
    eps: T,
    budget: usize,
    seed: u64,
    workers: usize,
) -> Result<MinTimeResult<T>> {
    if target.n() != sys.n() {
        return Err(CoreError::DimensionMismatch(
            "target dimension does not match the system".into(),
        ));
    }
    if !target.is_finite() {
        return Err(CoreError::NonFinite("target".into()));
    }
    if !target.is_unitary(real(tol::UNITARY_INPUT)) {
        return Err(CoreError::InvalidInput("target is not unitary".into()));
    }
    if !(eps.is_finite() && eps > T::zero()) {
        return Err(CoreError::InvalidInput(
            "tolerance must be positive and finite".into(),
        ));
    }
    if budget == 0 || workers == 0 {
        return Err(CoreError::InvalidInput(
            "budget and worker count must be at least 1".into(),
        ));
    }
    let Bound::Amplitude(bound) = sys.bound() else {
        return Err(CoreError::InvalidInput(
            "a time estimate needs a finite amplitude bound".into(),
        ));
    };

    let start_error = (target - &ComplexMatrix::identity(sys.n())).frobenius_norm();
    if start_error <= eps {
        return Ok(MinTimeResult {
            reached: true,
            t_est: T::zero(),
            achieved_error: start_error,
            tolerance: eps,
            simulations: 0,
        });
    }

    let mut search = Search {
        sys,
        target,
        rungs: rung_ladder(bound),
        per_rung: (budget / 128).max(PER_RUNG_FLOOR),
        seed,
        workers,
        horizon_counter: 0,
        simulations: 0,
        budget,
    };

    // Doubling phase: find the first power-of-two horizon that reaches.
    let mut lo = T::zero();
    let mut horizon = real::<T>(FIRST_HORIZON);
    let mut best = (T::infinity(), T::zero());
    let mut bracket: Option<(T, T)> = None;
    while crate::scalar::as_f64(horizon) <= MAX_HORIZON {
        let Some(err) = search.evaluate(horizon)? else {
            break;
        };
        if err < best.0 {
            best = (err, horizon);
        }
        if err <= eps {
            bracket = Some((horizon, err));
            break;
        }
        lo = horizon;
        horizon = horizon + horizon;
    }

    let Some((mut hi, mut hi_err)) = bracket else {
        return Ok(MinTimeResult {
            reached: false,
            t_est: best.1,
            achieved_error: best.0,
            tolerance: eps,
            simulations: search.simulations,
        });
    };

    // Bisection phase: shrink [lo, hi] keeping hi reachable.
    while hi - lo > real::<T>(BRACKET_REL) * hi && hi - lo > real(1e-3) {
        let mid = (lo + hi) * real(0.5);
        let Some(err) = search.evaluate(mid)? else {
            break;
        };
        if err <= eps {
            hi = mid;
            hi_err = err;
        } else {
            lo = mid;
        }
    }

    Ok(MinTimeResult {
        reached: true,
        t_est: hi,
        achieved_error: hi_err,
        tolerance: eps,
        simulations: search.simulations,
    })
}

/// Endpoint error of the uniform-grid law defined by `amps`.
fn score<T: Real>(
    sys: &ControlSystem<T>,
    target: &ComplexMatrix<T>,
    horizon: T,
    channels: usize,
    amps: &[T],
) -> Result<T> {
    let law = law_from_amplitudes(horizon, channels, amps)?;
    let end = propagate(sys, &law)?;
    Ok((&end - target).frobenius_norm())
}

/// Amplitude rungs for a bound: the bound itself, then every power of
/// two strictly below it down to [`RUNG_FLOOR`].
fn rung_ladder<T: Real>(bound: T) -> Vec<T> {
    let b = crate::scalar::as_f64(bound);
    let mut rungs = vec![bound];
    let mut p = 2f64.powi(b.log2().floor() as i32);
    if (p - b).abs() <= 1e-12 * b {
        p /= 2.0;
    }
    while p >= RUNG_FLOOR * (1.0 - 1e-12) {
        rungs.push(real(p));
        p /= 2.0;
    }
    rungs
}

/// Stream slot for a rung: power-of-two rungs get a slot shared across
/// bounds, anything else a reserved one.
fn rung_slot(rung: f64) -> u64 {
    let l = rung.log2();
    let rounded = l.round();
    if (l - rounded).abs() < 1e-9 && (-5.0..=50.0).contains(&rounded) {
        (rounded as i64 + 5) as u64
    } else {
        63
    }
}

struct Search<'a, T: Real> {
    sys: &'a ControlSystem<T>,
    target: &'a ComplexMatrix<T>,
    rungs: Vec<T>,
    per_rung: usize,
    seed: u64,
    workers: usize,
    horizon_counter: u64,
    simulations: usize,
    budget: usize,
}

impl<T: Real> Search<'_, T> {
    /// Best endpoint error at `horizon` over all rung searches, or None
    /// once the budget is exhausted.
    fn evaluate(&mut self, horizon: T) -> Result<Option<T>> {
        if self.budget == self.simulations {
            return Ok(None);
        }
        let h_idx = self.horizon_counter;
        self.horizon_counter += 1;
        let mut best: Option<T> = None;
        for r in 0..self.rungs.len() {
            let allowance = self.per_rung.min(self.budget - self.simulations);
            if allowance == 0 {
                break;
            }
            let err = self.search_rung(horizon, h_idx, self.rungs[r], allowance)?;
            if best.is_none_or(|b| err < b) {
                best = Some(err);
            }
        }
        Ok(best)
    }

    /// Shooting plus coordinate descent with amplitudes capped at
    /// `rung`.
    fn search_rung(
        &mut self,
        horizon: T,
        h_idx: u64,
        rung: T,
        allowance: usize,
    ) -> Result<T> {
        let sys = self.sys;
        let target = self.target;
        let channels = sys.channels();
        let coords = SEGMENTS * channels;
        let slot = rung_slot(crate::scalar::as_f64(rung));
        let shots = (allowance * 2 / 5).clamp(1, allowance);
        let scaled: Vec<Vec<T>> = (0..shots)
            .map(|i| {
                let mut rng = rng_from_seed_and_index(
                    self.seed,
                    h_idx * 1_000_003 + slot * 15_013 + i as u64,
                );
                (0..coords)
                    .map(|_| rung * uniform::<T>(&mut rng, -1.0, 1.0))
                    .collect()
            })
            .collect();

        // Shooting, sharded over workers; per-candidate streams make
        // the outcome independent of the shard layout.
        let shot_errs: Vec<T> = if self.workers > 1 && shots >= 2 {
            let chunk_len = shots.div_ceil(self.workers);
            let gathered: Result<Vec<Vec<T>>> = std::thread::scope(|scope| {
                let handles: Vec<_> = scaled
                    .chunks(chunk_len)
                    .map(|chunk| {
                        scope.spawn(move || {
                            chunk
                                .iter()
                                .map(|a| score(sys, target, horizon, channels, a))
                                .collect::<Result<Vec<T>>>()
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("shooting worker panicked"))
                    .collect()
            });
            gathered?.into_iter().flatten().collect()
        } else {
            scaled
                .iter()
                .map(|a| score(sys, target, horizon, channels, a))
                .collect::<Result<_>>()?
        };
        self.simulations += shots;

        let (mut best_idx, mut best_err) = (0usize, shot_errs[0]);
        for (i, &e) in shot_errs.iter().enumerate().skip(1) {
            if e < best_err {
                best_idx = i;
                best_err = e;
            }
        }
        let mut best_amps = scaled[best_idx].clone();

        // Coordinate descent on the winner, shrinking the line-search
        // radius each round. The first round scans the full admissible
        // interval, endpoints included.
        let mut refine_left = allowance - shots;
        'refine: for &radius_frac in &ROUND_RADII {
            let radius = rung * real(radius_frac);
            for k in 0..coords {
                let center = if radius_frac >= 1.0 {
                    T::zero()
                } else {
                    best_amps[k]
                };
                for &g in &LINE_GRID {
                    if refine_left == 0 {
                        break 'refine;
                    }
                    let cand = (center + radius * real(g)).max(-rung).min(rung);
                    if cand == best_amps[k] {
                        continue;
                    }
                    let mut amps = best_amps.clone();
                    amps[k] = cand;
                    let err = score(sys, target, horizon, channels, &amps)?;
                    refine_left -= 1;
                    self.simulations += 1;
                    if err < best_err {
                        best_err = err;
                        best_amps = amps;
                    }
                }
            }
        }
        Ok(best_err)
    }
}

/// Uniform-grid law over [0, horizon] with SEGMENTS intervals, reading
/// amplitudes segment-major.
fn law_from_amplitudes<T: Real>(
    horizon: T,
    channels: usize,
    amps: &[T],
) -> Result<ControlLaw<T>> {
    let breakpoints: Vec<T> = (0..=SEGMENTS)
        .map(|k| horizon * real::<T>(k as f64 / SEGMENTS as f64))
        .collect();
    let values: Vec<Vec<T>> = (0..SEGMENTS)
        .map(|s| amps[s * channels..(s + 1) * channels].to_vec())
        .collect();
    ControlLaw::new(breakpoints, values)
}
