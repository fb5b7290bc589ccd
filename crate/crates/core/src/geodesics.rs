//! Horizontal geodesics of the k + p splitting: the two-exponential
//! evaluation map, the explicit SU(2) coordinate formulas, and discrete
//! horizontality / arclength measurements on trajectories.

use crate::cartan::{minkowski_j, CartanPair, PairFamily};
use crate::error::{CoreError, Result};
use crate::linalg::{expm, logm_series};
use crate::matrix::{frobenius_inner, ComplexMatrix};
use crate::scalar::{real, Real};
use crate::su2::{quaternion_coords, sigma_x, sigma_y, sigma_z};
use crate::tol;
use num_complex::Complex;

/// Geodesic data: initial point, rotation component a_k, horizontal
/// component a_p, and the pair fixing the geometry.
///
/// Validated on construction; a_p is required to have unit p-norm so
/// the curve is parametrized by arclength.
#[derive(Debug, Clone)]
pub struct GeodesicSpec<T: Real> {
    x0: ComplexMatrix<T>,
    a_k: ComplexMatrix<T>,
    a_p: ComplexMatrix<T>,
    pair: CartanPair<T>,
}

impl<T: Real> GeodesicSpec<T> {
    pub fn new(
        x0: ComplexMatrix<T>,
        a_k: ComplexMatrix<T>,
        a_p: ComplexMatrix<T>,
        pair: CartanPair<T>,
    ) -> Result<Self> {
        let n = pair.ambient_n();
        if x0.n() != n || a_k.n() != n || a_p.n() != n {
            return Err(CoreError::DimensionMismatch(format!(
                "geodesic data must be {n}x{n} to match the pair"
            )));
        }
        for (name, m) in [("x0", &x0), ("a_k", &a_k), ("a_p", &a_p)] {
            if !m.is_finite() {
                return Err(CoreError::NonFinite(format!("geodesic field {name}")));
            }
        }
        let gtol = real::<T>(tol::GENERATOR);
        if !pair.k().contains(&a_k, gtol)? {
            return Err(CoreError::InvalidInput(
                "geodesic invariant violated: a_k is not in k".into(),
            ));
        }
        if !pair.p().contains(&a_p, gtol)? {
            return Err(CoreError::InvalidInput(
                "geodesic invariant violated: a_p is not in p".into(),
            ));
        }
        let norm = metric_norm(&pair, &a_p);
        if (norm - T::one()).abs() > gtol {
            return Err(CoreError::InvalidInput(
                "geodesic invariant violated: a_p must have unit p-norm \
                 (arclength parametrization)"
                    .into(),
            ));
        }
        if !in_group(&pair, &x0, real(tol::TRAJECTORY_MEMBER)) {
            return Err(CoreError::InvalidInput(
                "geodesic invariant violated: x0 is not a group element".into(),
            ));
        }
        Ok(Self { x0, a_k, a_p, pair })
    }

    pub fn x0(&self) -> &ComplexMatrix<T> {
        &self.x0
    }

    pub fn a_k(&self) -> &ComplexMatrix<T> {
        &self.a_k
    }

    pub fn a_p(&self) -> &ComplexMatrix<T> {
        &self.a_p
    }

    pub fn pair(&self) -> &CartanPair<T> {
        &self.pair
    }
}

/// Group membership test matching the pair's family: unitary for the
/// special-unitary families, real J-orthogonal for the hyperbolic one.
pub fn in_group<T: Real>(pair: &CartanPair<T>, x: &ComplexMatrix<T>, tol: T) -> bool {
    match pair.family() {
        PairFamily::Su2Pauli | PairFamily::SuN => x.is_unitary(tol),
        PairFamily::SoN1 => {
            let j = minkowski_j::<T>(pair.ambient_n());
            let defect = (&(&(&x.transpose() * &j) * x) - &j).frobenius_norm();
            x.max_imag_abs() <= tol && defect <= tol * T::one().max(x.frobenius_norm())
        }
    }
}

/// Norm induced by the pair's metric on p (no membership check).
fn metric_norm<T: Real>(pair: &CartanPair<T>, y: &ComplexMatrix<T>) -> T {
    let inner = frobenius_inner(y, y).expect("same dimension by construction");
    (pair.metric_scale() * inner).sqrt()
}

/// Norm of a p-element under the metric making the constructed p-basis
/// orthonormal. Errors if `x` is outside p.
pub fn p_norm<T: Real>(x: &ComplexMatrix<T>, pair: &CartanPair<T>) -> Result<T> {
    if !pair.p().contains(x, real(tol::SPAN_MEMBERSHIP))? {
        return Err(CoreError::InvalidInput(
            "norm is only defined on p".into(),
        ));
    }
    Ok(metric_norm(pair, x))
}

/// Evaluates the geodesic x(t) = x0 exp((a_k + a_p) t) exp(-a_k t).
pub fn geodesic_point<T: Real>(spec: &GeodesicSpec<T>, t: T) -> Result<ComplexMatrix<T>> {
    if !t.is_finite() {
        return Err(CoreError::NonFinite("geodesic parameter t".into()));
    }
    let left = expm(&(&spec.a_k + &spec.a_p).scale(t))?;
    let right = expm(&spec.a_k.scale(-t))?;
    Ok(&(&spec.x0 * &left) * &right)
}

/// A sampled curve on the group: strictly increasing times starting at
/// zero, one point per time.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    times: Vec<T>,
    points: Vec<ComplexMatrix<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn new(times: Vec<T>, points: Vec<ComplexMatrix<T>>) -> Result<Self> {
        if times.is_empty() || times.len() != points.len() {
            return Err(CoreError::InvalidInput(
                "trajectory needs one point per time".into(),
            ));
        }
        if times[0] != T::zero() {
            return Err(CoreError::InvalidInput(
                "trajectory time grid must start at 0".into(),
            ));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(CoreError::NonFinite("trajectory time grid".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CoreError::InvalidInput(
                "trajectory times must be strictly increasing".into(),
            ));
        }
        let n = points[0].n();
        if points.iter().any(|p| p.n() != n || !p.is_finite()) {
            return Err(CoreError::InvalidInput(
                "trajectory points must share one finite dimension".into(),
            ));
        }
        Ok(Self { times, points })
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn points(&self) -> &[ComplexMatrix<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty grids
    }

    pub fn n(&self) -> usize {
        self.points[0].n()
    }

    pub fn end(&self) -> &ComplexMatrix<T> {
        self.points.last().expect("nonempty by construction")
    }
}

/// Samples the geodesic on a uniform grid of `steps` intervals over
/// [0, t_end].
pub fn geodesic_trajectory<T: Real>(
    spec: &GeodesicSpec<T>,
    t_end: T,
    steps: usize,
) -> Result<Trajectory<T>> {
    if !(t_end.is_finite() && t_end > T::zero()) {
        return Err(CoreError::InvalidInput(
            "trajectory horizon must be positive and finite".into(),
        ));
    }
    if steps == 0 {
        return Err(CoreError::InvalidInput(
            "trajectory needs at least one step".into(),
        ));
    }
    let mut times = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = if i == 0 {
            T::zero()
        } else {
            t_end * real::<T>(i as f64 / steps as f64)
        };
        times.push(t);
        points.push(geodesic_point(spec, t)?);
    }
    Trajectory::new(times, points)
}

/// Which SU(2) geodesic coordinate formula to evaluate: the published
/// trigonometric expressions exactly as printed, or the two-exponential
/// product they summarize. The two disagree for c != 0; the product is
/// the ground truth the rest of the crate binds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su2GeodesicForm {
    Literal,
    Oracle,
}

/// Coordinates (mu, nu) of the SU(2) geodesic through the identity with
/// initial data (cos(theta) sx + sin(theta) sy) + c sz, evaluated at t.
pub fn su2_geodesic_closed_form<T: Real>(
    theta: T,
    c: T,
    t: T,
    form: Su2GeodesicForm,
) -> Result<(Complex<T>, Complex<T>)> {
    for (name, v) in [("theta", theta), ("c", c), ("t", t)] {
        if !v.is_finite() {
            return Err(CoreError::NonFinite(format!("geodesic parameter {name}")));
        }
    }
    let two = T::one() + T::one();
    match form {
        Su2GeodesicForm::Literal => {
            let omega = (T::one() + c * c).sqrt();
            let half_ct = c * t / two;
            let re_mu = c * half_ct.sin() * (omega * half_ct).sin() / omega
                + half_ct.cos() * (omega * t / two).cos();
            let im_mu = c * half_ct.cos() * (omega * t / two).sin() / omega
                - half_ct.sin() * (omega * t / two).cos();
            let scale = (omega * t / two).sin() / omega;
            let nu = Complex::from_polar(scale, half_ct + theta);
            Ok((Complex::new(re_mu, im_mu), nu))
        }
        Su2GeodesicForm::Oracle => {
            let lambda = &(&sigma_x().scale(theta.cos()) + &sigma_y().scale(theta.sin()))
                + &sigma_z().scale(c);
            let x = &expm(&lambda.scale(t))? * &expm(&sigma_z().scale(-c * t))?;
            quaternion_coords(&x, real(1e-8))
        }
    }
}

fn group_inverse<T: Real>(pair: &CartanPair<T>, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    match pair.family() {
        PairFamily::Su2Pauli | PairFamily::SuN => x.adjoint(),
        PairFamily::SoN1 => {
            let j = minkowski_j::<T>(pair.ambient_n());
            &(&j * &x.transpose()) * &j
        }
    }
}

fn step_logs<T: Real>(
    traj: &Trajectory<T>,
    pair: &CartanPair<T>,
) -> Result<Vec<ComplexMatrix<T>>> {
    if traj.len() < 2 {
        return Err(CoreError::InvalidInput(
            "length and horizontality need at least two trajectory points".into(),
        ));
    }
    if traj.n() != pair.ambient_n() {
        return Err(CoreError::DimensionMismatch(
            "trajectory dimension does not match the pair".into(),
        ));
    }
    let points = traj.points();
    let mut logs = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        let ratio = &group_inverse(pair, &w[0]) * &w[1];
        logs.push(logm_series(&ratio)?);
    }
    Ok(logs)
}

/// Discrete horizontal arclength: sum over steps of the p-norm of the
/// p-projected logarithm of each step ratio.
///
/// Errors when a step ratio is outside the logarithm's convergence
/// ball; resample on a finer grid in that case.
pub fn horizontal_length<T: Real>(
    traj: &Trajectory<T>,
    pair: &CartanPair<T>,
) -> Result<T> {
    let mut total = T::zero();
    for log in step_logs(traj, pair)? {
        let proj = pair.p().project(&log)?;
        total = total + metric_norm(pair, &proj);
    }
    Ok(total)
}

/// True iff every finite-difference body velocity stays in p: the
/// k-component of each step log, divided by the step width, has norm
/// at most `tol`.
pub fn is_horizontal<T: Real>(
    traj: &Trajectory<T>,
    pair: &CartanPair<T>,
    tol: T,
) -> Result<bool> {
    let logs = step_logs(traj, pair)?;
    let times = traj.times();
    for (i, log) in logs.iter().enumerate() {
        let dt = times[i + 1] - times[i];
        let k_part = pair.k().project(log)?;
        // The p-metric scale keeps the two component norms comparable.
        if metric_norm(pair, &k_part) / dt > tol {
            return Ok(false);
        }
    }
    Ok(true)
}
