//! Bilinear control systems on SU(n): exact piecewise-constant
//! simulation, controllability verdicts, commutator-generated directions,
//! reachable-set sampling, and adjoint-orbit directions.

pub mod linear;
pub mod mintime;
pub mod planar;

pub use linear::{kalman_rank, linear_solution, LinearSystem};
pub use mintime::{min_time_estimate, MinTimeResult};
pub use planar::r2_example;

use crate::cartan::{CartanPair, PairFamily};
use crate::error::{CoreError, Result};
use crate::geodesics::Trajectory;
use crate::lie::{adjoint_action, lie_closure};
use crate::linalg::expm;
use crate::matrix::{commutator, ComplexMatrix};
use crate::random::{haar_orthogonal, rng_from_seed_and_index, uniform};
use crate::scalar::{real, Real};
use crate::subspace::Subspace;
use crate::tol;
use serde::Serialize;

/// Per-channel amplitude cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound<T> {
    Unbounded,
    Amplitude(T),
}

impl<T: Real> Bound<T> {
    pub fn amplitude_cap(&self) -> Option<T> {
        match self {
            Bound::Unbounded => None,
            Bound::Amplitude(b) => Some(*b),
        }
    }

    /// Amplitude range used when drawing random laws: the cap when
    /// finite, otherwise a unit reference amplitude.
    fn sampling_amplitude(&self) -> T {
        self.amplitude_cap().unwrap_or_else(T::one)
    }

    fn permits(&self, value: T) -> bool {
        match self {
            Bound::Unbounded => value.is_finite(),
            Bound::Amplitude(b) => value.abs() <= *b + real(1e-12),
        }
    }
}

/// A right-invariant bilinear system dU/dt = (drift + sum u_j C_j) U
/// with anti-Hermitian traceless generators.
#[derive(Debug, Clone)]
pub struct ControlSystem<T: Real> {
    n: usize,
    drift: ComplexMatrix<T>,
    controls: Vec<ComplexMatrix<T>>,
    bound: Bound<T>,
}

impl<T: Real> ControlSystem<T> {
    /// Validates and builds a system. `drift = None` means driftless.
    /// Every generator must be anti-Hermitian and traceless; the bound,
    /// when finite, must be positive.
    pub fn new(
        drift: Option<ComplexMatrix<T>>,
        controls: Vec<ComplexMatrix<T>>,
        bound: Bound<T>,
    ) -> Result<Self> {
        if controls.is_empty() {
            return Err(CoreError::InvalidInput(
                "a control system needs at least one control generator".into(),
            ));
        }
        let n = controls[0].n();
        let drift = drift.unwrap_or_else(|| ComplexMatrix::zeros(n));
        let gtol = real::<T>(tol::GENERATOR);
        for (name, g) in
            std::iter::once(("drift", &drift)).chain(controls.iter().map(|g| ("control", g)))
        {
            if g.n() != n {
                return Err(CoreError::DimensionMismatch(format!(
                    "{name} generator is {0}x{0}, expected {n}x{n}",
                    g.n()
                )));
            }
            if !g.is_finite() {
                return Err(CoreError::NonFinite(format!("{name} generator")));
            }
            if !g.is_anti_hermitian(gtol) {
                return Err(CoreError::InvalidInput(format!(
                    "{name} generator is not anti-Hermitian"
                )));
            }
            if !g.is_traceless(gtol) {
                return Err(CoreError::InvalidInput(format!(
                    "{name} generator is not traceless"
                )));
            }
        }
        if let Bound::Amplitude(b) = bound {
            if !(b.is_finite() && b > T::zero()) {
                return Err(CoreError::InvalidInput(
                    "amplitude bound must be positive and finite".into(),
                ));
            }
        }
        Ok(Self { n, drift, controls, bound })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn drift(&self) -> &ComplexMatrix<T> {
        &self.drift
    }

    pub fn controls(&self) -> &[ComplexMatrix<T>] {
        &self.controls
    }

    pub fn channels(&self) -> usize {
        self.controls.len()
    }

    pub fn bound(&self) -> Bound<T> {
        self.bound
    }

    pub fn is_driftless(&self) -> bool {
        self.drift.frobenius_norm() == T::zero()
    }

    /// Generator of the interval with amplitudes `u`.
    fn interval_generator(&self, u: &[T]) -> ComplexMatrix<T> {
        let mut g = self.drift.clone();
        for (c, &uj) in self.controls.iter().zip(u) {
            g = &g + &c.scale(uj);
        }
        g
    }
}

/// Piecewise-constant open-loop control: `breakpoints` has one more
/// entry than `values`; `values[k]` holds the per-channel amplitudes on
/// [breakpoints[k], breakpoints[k+1]).
#[derive(Debug, Clone, PartialEq)]
pub struct ControlLaw<T: Real> {
    breakpoints: Vec<T>,
    values: Vec<Vec<T>>,
}

impl<T: Real> ControlLaw<T> {
    pub fn new(breakpoints: Vec<T>, values: Vec<Vec<T>>) -> Result<Self> {
        if breakpoints.len() < 2 || values.len() + 1 != breakpoints.len() {
            return Err(CoreError::InvalidInput(
                "a law needs one amplitude vector per interval (one fewer \
                 than breakpoints)"
                    .into(),
            ));
        }
        if breakpoints[0] != T::zero() {
            return Err(CoreError::InvalidInput(
                "law breakpoints must start at 0".into(),
            ));
        }
        if breakpoints.iter().any(|t| !t.is_finite())
            || values.iter().flatten().any(|u| !u.is_finite())
        {
            return Err(CoreError::NonFinite("control law".into()));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CoreError::InvalidInput(
                "law breakpoints must be strictly increasing".into(),
            ));
        }
        let m = values[0].len();
        if values.iter().any(|v| v.len() != m) {
            return Err(CoreError::InvalidInput(
                "every interval must set the same number of channels".into(),
            ));
        }
        Ok(Self { breakpoints, values })
    }

    /// Single-interval law holding `u` on [0, t_end].
    pub fn constant(u: Vec<T>, t_end: T) -> Result<Self> {
        Self::new(vec![T::zero(), t_end], vec![u])
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn channels(&self) -> usize {
        self.values[0].len()
    }

    pub fn end(&self) -> T {
        *self.breakpoints.last().expect("nonempty by construction")
    }

    /// Amplitudes in force at time t (empty slice past the end).
    pub fn at(&self, t: T) -> Option<&[T]> {
        if t < T::zero() || t >= self.end() {
            return None;
        }
        let k = self
            .breakpoints
            .windows(2)
            .position(|w| t >= w[0] && t < w[1])
            .expect("t is inside the covered range");
        Some(&self.values[k])
    }

    fn check_against(&self, sys: &ControlSystem<T>) -> Result<()> {
        if self.channels() != sys.channels() {
            return Err(CoreError::DimensionMismatch(format!(
                "law drives {} channels, system has {}",
                self.channels(),
                sys.channels()
            )));
        }
        Ok(())
    }
}

fn check_bound<T: Real>(sys: &ControlSystem<T>, law: &ControlLaw<T>) -> Result<()> {
    law.check_against(sys)?;
    if law
        .values
        .iter()
        .flatten()
        .any(|&u| !sys.bound.permits(u))
    {
        return Err(CoreError::InvalidInput(
            "law amplitude exceeds the system bound".into(),
        ));
    }
    Ok(())
}

/// Endpoint of the law from `start`, exactly (one exponential per
/// interval, no sampling).
pub fn propagate_from<T: Real>(
    sys: &ControlSystem<T>,
    law: &ControlLaw<T>,
    start: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    check_bound(sys, law)?;
    if start.n() != sys.n {
        return Err(CoreError::DimensionMismatch(
            "start point dimension does not match the system".into(),
        ));
    }
    let mut u = start.clone();
    for (k, values) in law.values.iter().enumerate() {
        let dt = law.breakpoints[k + 1] - law.breakpoints[k];
        let g = sys.interval_generator(values);
        u = &expm(&g.scale(dt))? * &u;
    }
    Ok(u)
}

/// Endpoint of the law from the identity.
pub fn propagate<T: Real>(
    sys: &ControlSystem<T>,
    law: &ControlLaw<T>,
) -> Result<ComplexMatrix<T>> {
    propagate_from(sys, law, &ComplexMatrix::identity(sys.n))
}

/// Simulates the law from `start`, sampling the trajectory roughly
/// every `dt` while hitting every interval breakpoint exactly.
///
/// Within an interval the propagator is a single exponential flow, so
/// `dt` only controls output resolution, not accuracy.
pub fn simulate_from<T: Real>(
    sys: &ControlSystem<T>,
    law: &ControlLaw<T>,
    dt: T,
    start: &ComplexMatrix<T>,
) -> Result<Trajectory<T>> {
    check_bound(sys, law)?;
    if !(dt.is_finite() && dt > T::zero()) {
        return Err(CoreError::InvalidInput(
            "sampling step must be positive and finite".into(),
        ));
    }
    if start.n() != sys.n {
        return Err(CoreError::DimensionMismatch(
            "start point dimension does not match the system".into(),
        ));
    }
    let mut times = vec![T::zero()];
    let mut points = vec![start.clone()];
    for (k, values) in law.values.iter().enumerate() {
        let (t0, t1) = (law.breakpoints[k], law.breakpoints[k + 1]);
        let g = sys.interval_generator(values);
        let step = expm(&g.scale(dt))?;
        let mut t = t0;
        loop {
            let t_next = if t + dt < t1 { t + dt } else { t1 };
            let u_next = if t_next - t == dt {
                &step * points.last().expect("nonempty")
            } else {
                &expm(&g.scale(t_next - t))? * points.last().expect("nonempty")
            };
            times.push(t_next);
            points.push(u_next);
            t = t_next;
            if t >= t1 {
                break;
            }
        }
    }
    Trajectory::new(times, points)
}

/// Simulates the law from the identity.
pub fn simulate<T: Real>(
    sys: &ControlSystem<T>,
    law: &ControlLaw<T>,
    dt: T,
) -> Result<Trajectory<T>> {
    simulate_from(sys, law, dt, &ComplexMatrix::identity(sys.n))
}

/// Controllability verdicts and the distributions they are decided on.
#[derive(Debug, Clone, Serialize)]
pub struct ControllabilityReport<T: Real> {
    /// Dimension of the ambient traceless algebra, n^2 - 1.
    pub ambient_dim: usize,
    /// Dimension of the algebra generated by the controls alone.
    pub control_algebra_dim: usize,
    /// Dimension of the algebra generated by drift and controls.
    pub full_algebra_dim: usize,
    pub driftless_controllable: bool,
    pub controllable_with_drift: bool,
    /// True when the drift is essential: the system is controllable
    /// with it and not without it.
    pub drift_needed: bool,
    /// Orthonormal basis of the control span (the distribution at the
    /// identity; right-translate by U for the moving distribution).
    #[serde(skip)]
    pub control_distribution: Vec<ComplexMatrix<T>>,
    /// Anchor of the affine distribution drift + span(controls); None
    /// for driftless systems.
    #[serde(skip)]
    pub affine_anchor: Option<ComplexMatrix<T>>,
}

/// Rank-condition verdicts for the system: driftless controllability
/// from the controls' closure, drifted controllability from the closure
/// including the drift.
pub fn controllability_report<T: Real>(
    sys: &ControlSystem<T>,
) -> Result<ControllabilityReport<T>> {
    let ambient_dim = sys.n * sys.n - 1;
    let control_closure = lie_closure(sys.controls(), ambient_dim)?;
    let full_closure = if sys.is_driftless() {
        control_closure.clone()
    } else {
        let mut gens = sys.controls().to_vec();
        gens.push(sys.drift().clone());
        lie_closure(&gens, ambient_dim)?
    };
    let driftless_controllable = control_closure.dim() == ambient_dim;
    let controllable_with_drift = full_closure.dim() == ambient_dim;
    let distribution = Subspace::from_span(sys.n, sys.controls())?;
    Ok(ControllabilityReport {
        ambient_dim,
        control_algebra_dim: control_closure.dim(),
        full_algebra_dim: full_closure.dim(),
        driftless_controllable,
        controllable_with_drift,
        drift_needed: controllable_with_drift && !driftless_controllable,
        control_distribution: distribution.basis().to_vec(),
        affine_anchor: (!sys.is_driftless()).then(|| sys.drift().clone()),
    })
}

/// Four-exponential group commutator exp(o1 dt) exp(o2 dt) exp(-o1 dt)
/// exp(-o2 dt) and its distance to the second-order model
/// I + dt^2 [o1, o2]. The distance shrinks as O(dt^3), which is what
/// makes the bracket a usable new motion direction.
pub fn ng_generator<T: Real>(
    o1: &ComplexMatrix<T>,
    o2: &ComplexMatrix<T>,
    dt: T,
) -> Result<(ComplexMatrix<T>, T)> {
    if !(dt.is_finite() && dt > T::zero()) {
        return Err(CoreError::InvalidInput(
            "commutator step must be positive and finite".into(),
        ));
    }
    let gtol = real::<T>(tol::GENERATOR);
    if !o1.is_anti_hermitian(gtol) || !o2.is_anti_hermitian(gtol) {
        return Err(CoreError::InvalidInput(
            "commutator generation needs anti-Hermitian generators".into(),
        ));
    }
    let u = &(&(&expm(&o1.scale(dt))? * &expm(&o2.scale(dt))?)
        * &expm(&o1.scale(-dt))?)
        * &expm(&o2.scale(-dt))?;
    let model = &ComplexMatrix::identity(o1.n()) + &commutator(o1, o2)?.scale(dt * dt);
    let residual = (&u - &model).frobenius_norm();
    Ok((u, residual))
}

/// One random endpoint sample: the law horizon and the reached element.
#[derive(Debug, Clone)]
pub struct ReachableSample<T: Real> {
    pub horizon: T,
    pub endpoint: ComplexMatrix<T>,
}

/// Endpoints of `count` random piecewise-constant laws with `segments`
/// intervals and horizons drawn uniformly from (0, t_max].
///
/// Sample i is driven by the stream (seed, i), so a fixed seed pins the
/// whole pool and pools for smaller horizons embed by filtering on
/// `horizon`.
pub fn reachable_samples_with_horizons<T: Real>(
    sys: &ControlSystem<T>,
    t_max: T,
    count: usize,
    segments: usize,
    seed: u64,
) -> Result<Vec<ReachableSample<T>>> {
    if !(t_max.is_finite() && t_max > T::zero()) {
        return Err(CoreError::InvalidInput(
            "sampling horizon must be positive and finite".into(),
        ));
    }
    if count == 0 || segments == 0 {
        return Err(CoreError::InvalidInput(
            "sampling needs at least one endpoint and one segment".into(),
        ));
    }
    let amp = sys.bound.sampling_amplitude();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = rng_from_seed_and_index(seed, i as u64);
        let frac: T = uniform(&mut rng, 0.0, 1.0);
        // Guard against a zero-length law on the measure-zero draw.
        let horizon = (frac.max(real(1e-9))) * t_max;
        let breakpoints: Vec<T> = (0..=segments)
            .map(|k| horizon * real::<T>(k as f64 / segments as f64))
            .collect();
        let values: Vec<Vec<T>> = (0..segments)
            .map(|_| {
                (0..sys.channels())
                    .map(|_| amp * uniform::<T>(&mut rng, -1.0, 1.0))
                    .collect()
            })
            .collect();
        let law = ControlLaw::new(breakpoints, values)?;
        out.push(ReachableSample { horizon, endpoint: propagate(sys, &law)? });
    }
    Ok(out)
}

/// [`reachable_samples_with_horizons`] reduced to the endpoints.
pub fn reachable_samples<T: Real>(
    sys: &ControlSystem<T>,
    t_max: T,
    count: usize,
    segments: usize,
    seed: u64,
) -> Result<Vec<ComplexMatrix<T>>> {
    Ok(reachable_samples_with_horizons(sys, t_max, count, segments, seed)?
        .into_iter()
        .map(|s| s.endpoint)
        .collect())
}

/// Samples Ad_k(drift) over Haar-random k in the subgroup generated by
/// the controls.
///
/// Preconditions checked: the drift lies in p and the controls generate
/// exactly k. Every returned direction then stays in p.
pub fn adjoint_system_directions<T: Real>(
    sys: &ControlSystem<T>,
    pair: &CartanPair<T>,
    samples: usize,
    seed: u64,
) -> Result<Vec<ComplexMatrix<T>>> {
    if samples == 0 {
        return Err(CoreError::InvalidInput(
            "at least one sample is required".into(),
        ));
    }
    if sys.n() != pair.ambient_n() {
        return Err(CoreError::DimensionMismatch(
            "system and pair dimensions differ".into(),
        ));
    }
    if !pair.p().contains(sys.drift(), real(tol::SPAN_MEMBERSHIP))? {
        return Err(CoreError::InvalidInput(
            "adjoint sampling requires the drift to lie in p".into(),
        ));
    }
    let closure = lie_closure(sys.controls(), pair.k().dim() + 1)?;
    let closure_in_k = closure
        .basis()
        .iter()
        .map(|b| pair.k().contains(b, real(tol::SPAN_MEMBERSHIP)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|ok| ok);
    if closure.dim() != pair.k().dim() || !closure_in_k {
        return Err(CoreError::InvalidInput(
            "adjoint sampling requires the controls to generate k".into(),
        ));
    }

    let n = pair.ambient_n();
    let mut rng = rng_from_seed_and_index(seed, 0);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let k_elt = match pair.family() {
            // The torus exp(alpha sigma_z) has period 4 pi in alpha.
            PairFamily::Su2Pauli => {
                let alpha: T = uniform(&mut rng, 0.0, 4.0 * std::f64::consts::PI);
                expm(&crate::su2::sigma_z::<T>().scale(alpha))?
            }
            PairFamily::SuN => haar_orthogonal(n, &mut rng),
            PairFamily::SoN1 => {
                // Rotation block acting on the first n-1 coordinates.
                let r = haar_orthogonal::<T>(n - 1, &mut rng);
                let mut k = ComplexMatrix::identity(n);
                for i in 0..n - 1 {
                    for j in 0..n - 1 {
                        k[(i, j)] = r[(i, j)];
                    }
                }
                k
            }
        };
        out.push(adjoint_action(&k_elt, sys.drift())?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_su2_pauli;
    use crate::random::{random_anti_hermitian_traceless, rng_from_seed};
    use crate::su2::{sigma_x, sigma_y, sigma_z};

    fn su2_system(drift: Option<ComplexMatrix<f64>>, controls: Vec<ComplexMatrix<f64>>) -> ControlSystem<f64> {
        ControlSystem::new(drift, controls, Bound::Amplitude(1.0)).unwrap()
    }

    #[test]
    fn system_validation() {
        assert!(ControlSystem::<f64>::new(None, vec![], Bound::Unbounded).is_err());
        // i*I is anti-Hermitian but not traceless.
        let phase = ComplexMatrix::diagonal(&[crate::matrix::c::<f64>(0.0, 1.0); 2]);
        assert!(ControlSystem::new(None, vec![phase], Bound::Unbounded).is_err());
        // A symmetric real matrix is not anti-Hermitian.
        let sym = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(ControlSystem::new(None, vec![sym], Bound::Unbounded).is_err());
        assert!(
            ControlSystem::new(None, vec![sigma_x::<f64>()], Bound::Amplitude(-1.0)).is_err()
        );
    }

    #[test]
    fn law_validation_and_lookup() {
        assert!(ControlLaw::new(vec![0.0, 1.0], vec![vec![1.0], vec![2.0]]).is_err());
        assert!(ControlLaw::new(vec![0.5, 1.0], vec![vec![1.0]]).is_err());
        assert!(ControlLaw::new(vec![0.0, 1.0, 0.5], vec![vec![1.0], vec![2.0]]).is_err());
        assert!(ControlLaw::new(vec![0.0, 1.0], vec![vec![f64::NAN]]).is_err());
        let law = ControlLaw::new(vec![0.0, 1.0, 3.0], vec![vec![1.0], vec![-0.5]]).unwrap();
        assert_eq!(law.at(0.5), Some(&[1.0][..]));
        assert_eq!(law.at(2.9), Some(&[-0.5][..]));
        assert_eq!(law.at(3.0), None);
        assert_eq!(law.end(), 3.0);
    }

    #[test]
    fn free_evolution_of_the_torus_generator() {
        let sys = su2_system(Some(sigma_z()), vec![sigma_x()]);
        let t = 2.0 * std::f64::consts::PI;
        let law = ControlLaw::constant(vec![0.0], t).unwrap();
        let end = propagate(&sys, &law).unwrap();
        let minus_i = ComplexMatrix::<f64>::identity(2).scale(-1.0);
        assert!((&end - &minus_i).frobenius_norm() < 1e-12);

        // No drift, no control: the identity forever.
        let idle = su2_system(None, vec![sigma_x()]);
        let end = propagate(&idle, &law).unwrap();
        assert!((&end - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn two_interval_law_matches_the_direct_product() {
        let sys = su2_system(None, vec![sigma_x(), sigma_y()]);
        let law = ControlLaw::new(
            vec![0.0, 0.7, 1.8],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap();
        let end = propagate(&sys, &law).unwrap();
        let want = &expm(&sigma_y::<f64>().scale(1.1)).unwrap()
            * &expm(&sigma_x::<f64>().scale(0.7)).unwrap();
        assert!((&end - &want).frobenius_norm() < 1e-13);
    }

    #[test]
    fn simulate_samples_breakpoints_and_stays_unitary() {
        let sys = su2_system(Some(sigma_z()), vec![sigma_x()]);
        let law = ControlLaw::new(vec![0.0, 0.25, 1.0], vec![vec![0.9], vec![-0.4]]).unwrap();
        let traj = simulate(&sys, &law, 0.1).unwrap();
        assert!(traj.times().contains(&0.25));
        assert!(traj.times().contains(&1.0));
        for u in traj.points() {
            assert!(u.is_unitary(1e-10));
        }
        // Exact endpoint regardless of sampling step.
        let coarse = simulate(&sys, &law, 0.37).unwrap();
        assert!((traj.end() - coarse.end()).frobenius_norm() < 1e-13);
    }

    #[test]
    fn simulate_enforces_the_bound() {
        let sys = su2_system(None, vec![sigma_x()]);
        let law = ControlLaw::constant(vec![1.5], 1.0).unwrap();
        assert!(matches!(
            simulate(&sys, &law, 0.1),
            Err(CoreError::InvalidInput(_))
        ));
        let wide = ControlSystem::new(None, vec![sigma_x::<f64>()], Bound::Unbounded).unwrap();
        assert!(simulate(&wide, &law, 0.1).is_ok());
    }

    #[test]
    fn concatenation_matches_chained_simulation() {
        let sys = su2_system(Some(sigma_z()), vec![sigma_x()]);
        let whole = ControlLaw::new(vec![0.0, 0.6, 1.4], vec![vec![0.8], vec![-0.3]]).unwrap();
        let first = ControlLaw::new(vec![0.0, 0.6], vec![vec![0.8]]).unwrap();
        let second = ControlLaw::new(vec![0.0, 0.8], vec![vec![-0.3]]).unwrap();
        let end_whole = propagate(&sys, &whole).unwrap();
        let mid = propagate(&sys, &first).unwrap();
        let end_chained = propagate_from(&sys, &second, &mid).unwrap();
        assert!((&end_whole - &end_chained).frobenius_norm() < 1e-10);
    }

    #[test]
    fn controllability_verdicts() {
        let free = su2_system(None, vec![sigma_x(), sigma_y()]);
        let r = controllability_report(&free).unwrap();
        assert!(r.driftless_controllable && r.controllable_with_drift && !r.drift_needed);
        assert_eq!((r.control_algebra_dim, r.full_algebra_dim, r.ambient_dim), (3, 3, 3));
        assert!(r.affine_anchor.is_none());

        let drifted = su2_system(Some(sigma_z()), vec![sigma_x()]);
        let r = controllability_report(&drifted).unwrap();
        assert!(!r.driftless_controllable && r.controllable_with_drift && r.drift_needed);
        assert_eq!(r.control_distribution.len(), 1);
        assert!(r.affine_anchor.is_some());

        let abelian = su2_system(None, vec![sigma_z()]);
        let r = controllability_report(&abelian).unwrap();
        assert!(!r.driftless_controllable && !r.controllable_with_drift);
    }

    #[test]
    fn commutator_product_second_order_model() {
        let (u, residual) = ng_generator(&sigma_x::<f64>(), &sigma_x(), 0.3).unwrap();
        assert!((&u - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-14);
        assert!(residual < 1e-14, "commuting generators leave no residual");

        let (_, r1) = ng_generator(&sigma_x::<f64>(), &sigma_y(), 0.1).unwrap();
        assert!(r1 < 5e-3, "residual {r1}");
        let (_, r2) = ng_generator(&sigma_x::<f64>(), &sigma_y(), 0.05).unwrap();
        let factor = r1 / r2;
        assert!((6.5..=9.5).contains(&factor), "halving factor {factor}");
    }

    #[test]
    fn commutator_order_fit() {
        let dts = [0.2, 0.1, 0.05];
        let rs: Vec<f64> = dts
            .iter()
            .map(|&dt| ng_generator(&sigma_x::<f64>(), &sigma_y(), dt).unwrap().1)
            .collect();
        // Least-squares slope of log r against log dt.
        let lx: Vec<f64> = dts.iter().map(|d| d.ln()).collect();
        let ly: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
        let mx = lx.iter().sum::<f64>() / 3.0;
        let my = ly.iter().sum::<f64>() / 3.0;
        let slope: f64 = lx
            .iter()
            .zip(&ly)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum::<f64>()
            / lx.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
        assert!((2.7..=3.3).contains(&slope), "slope {slope}");
    }

    #[test]
    fn unitarity_over_random_runs() {
        let mut rng = rng_from_seed(23);
        for trial in 0..100 {
            let n = 2 + (trial % 2);
            let sys = ControlSystem::new(
                Some(random_anti_hermitian_traceless::<f64>(n, &mut rng)),
                vec![
                    random_anti_hermitian_traceless::<f64>(n, &mut rng),
                    random_anti_hermitian_traceless::<f64>(n, &mut rng),
                ],
                Bound::Amplitude(2.0),
            )
            .unwrap();
            let law = ControlLaw::new(
                vec![0.0, 0.4, 1.1],
                vec![
                    vec![uniform(&mut rng, -2.0, 2.0), uniform(&mut rng, -2.0, 2.0)],
                    vec![uniform(&mut rng, -2.0, 2.0), uniform(&mut rng, -2.0, 2.0)],
                ],
            )
            .unwrap();
            let traj = simulate(&sys, &law, 0.2).unwrap();
            for u in traj.points() {
                let defect = (&(&u.adjoint() * u) - &ComplexMatrix::identity(n))
                    .frobenius_norm();
                assert!(defect < 1e-9, "trial {trial}: defect {defect}");
            }
        }
    }

    #[test]
    fn reachable_pool_is_deterministic_and_unitary() {
        let sys = su2_system(Some(sigma_z()), vec![sigma_x()]);
        let a = reachable_samples(&sys, 2.0, 20, 3, 7).unwrap();
        let b = reachable_samples(&sys, 2.0, 20, 3, 7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x - y).frobenius_norm(), 0.0);
        }
        for x in &a {
            assert!(x.is_unitary(1e-10));
        }
        // Short horizons stay near the identity.
        let near = reachable_samples(&sys, 1e-4, 10, 2, 7).unwrap();
        for x in &near {
            assert!((x - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-3);
        }
    }

    #[test]
    fn reachable_pools_nest_by_horizon() {
        let sys = su2_system(Some(sigma_z()), vec![sigma_x()]);
        let target = expm(&sigma_x::<f64>().scale(0.8)).unwrap();
        for seed in [1u64, 2, 3] {
            let pool = reachable_samples_with_horizons(&sys, 4.0, 300, 3, seed).unwrap();
            let best = |cap: f64| {
                pool.iter()
                    .filter(|s| s.horizon <= cap)
                    .map(|s| (&s.endpoint - &target).frobenius_norm())
                    .fold(f64::INFINITY, f64::min)
            };
            let (d1, d2, d4) = (best(1.0), best(2.0), best(4.0));
            assert!(d2 <= d1 && d4 <= d2, "seed {seed}: {d1} {d2} {d4}");
        }
    }

    #[test]
    fn adjoint_directions_stay_in_p() {
        let pair = build_su2_pauli::<f64>();
        let sys = ControlSystem::new(
            Some(sigma_x()),
            vec![sigma_z::<f64>()],
            Bound::Amplitude(1.0),
        )
        .unwrap();
        let dirs = adjoint_system_directions(&sys, &pair, 500, 3).unwrap();
        assert_eq!(dirs.len(), 500);
        for d in &dirs {
            assert!(pair.p().contains(d, 1e-8).unwrap());
            // Conjugation preserves the norm.
            assert!((d.frobenius_norm() - sigma_x::<f64>().frobenius_norm()).abs() < 1e-10);
        }
    }

    #[test]
    fn adjoint_directions_check_preconditions() {
        let pair = build_su2_pauli::<f64>();
        // Drift in k, not p.
        let bad_drift = ControlSystem::new(
            Some(sigma_z()),
            vec![sigma_z::<f64>()],
            Bound::Amplitude(1.0),
        )
        .unwrap();
        let err = adjoint_system_directions(&bad_drift, &pair, 5, 1)
            .unwrap_err()
            .to_string();
        assert!(err.contains("drift"), "{err}");
        // Controls generating more than k.
        let bad_controls = ControlSystem::new(
            Some(sigma_x()),
            vec![sigma_y::<f64>(), sigma_z()],
            Bound::Amplitude(1.0),
        )
        .unwrap();
        let err = adjoint_system_directions(&bad_controls, &pair, 5, 1)
            .unwrap_err()
            .to_string();
        assert!(err.contains("controls"), "{err}");
    }
}
