//! Linear control systems dx/dt = A x + B u: the Kalman rank test and
//! exact endpoint propagation for piecewise-constant inputs.

use crate::control::ControlLaw;
use crate::error::{CoreError, Result};
use crate::linalg::{expm, rank_of_rows};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Real};
use crate::tol;
use num_complex::Complex;

/// x' = A x + B u with B stored column-wise (one column per channel).
#[derive(Debug, Clone)]
pub struct LinearSystem<T: Real> {
    a: ComplexMatrix<T>,
    b_cols: Vec<Vec<Complex<T>>>,
}

impl<T: Real> LinearSystem<T> {
    pub fn new(a: ComplexMatrix<T>, b_cols: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = a.n();
        if !a.is_finite() {
            return Err(CoreError::NonFinite("state matrix".into()));
        }
        if b_cols.is_empty() {
            return Err(CoreError::InvalidInput(
                "a linear system needs at least one input column".into(),
            ));
        }
        if b_cols.iter().any(|c| c.len() != n) {
            return Err(CoreError::DimensionMismatch(
                "input column length does not match the state dimension".into(),
            ));
        }
        if b_cols
            .iter()
            .flatten()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(CoreError::NonFinite("input matrix".into()));
        }
        Ok(Self { a, b_cols })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn channels(&self) -> usize {
        self.b_cols.len()
    }

    pub fn a(&self) -> &ComplexMatrix<T> {
        &self.a
    }

    pub fn b_cols(&self) -> &[Vec<Complex<T>>] {
        &self.b_cols
    }

    fn apply_a(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.n())
            .map(|i| {
                (0..self.n())
                    .map(|j| self.a[(i, j)] * v[j])
                    .fold(Complex::new(T::zero(), T::zero()), |s, z| s + z)
            })
            .collect()
    }

    /// B u for a real amplitude vector.
    fn input_direction(&self, u: &[T]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.n()];
        for (col, &uj) in self.b_cols.iter().zip(u) {
            for (o, &bij) in out.iter_mut().zip(col) {
                *o = *o + bij * uj;
            }
        }
        out
    }
}

/// Rank of the controllability family {B, AB, ..., A^(n-1)B}.
///
/// Columns are compared over the reals (real and imaginary parts
/// stacked), which coincides with the usual real Kalman rank for real
/// data and is the conservative reading for complex data driven by real
/// amplitudes. Complete controllability of a real system means rank n.
pub fn kalman_rank<T: Real>(sys: &LinearSystem<T>) -> Result<usize> {
    let n = sys.n();
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n * sys.channels());
    for col in sys.b_cols() {
        let mut v = col.clone();
        for _ in 0..n {
            let mut row = Vec::with_capacity(2 * n);
            row.extend(v.iter().map(|z| z.re));
            row.extend(v.iter().map(|z| z.im));
            rows.push(row);
            v = sys.apply_a(&v);
        }
    }
    rank_of_rows(&rows, real(tol::RANK_REL))
}

/// Exact state at `t_final` under the law, by variation of constants.
///
/// Each constant-input interval is one exponential of the block matrix
/// [[A, Bu], [0, 0]] acting on (x, 1); past the end of the law the
/// input is zero and the state flows freely.
pub fn linear_solution<T: Real>(
    sys: &LinearSystem<T>,
    law: &ControlLaw<T>,
    t_final: T,
    x0: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let n = sys.n();
    if x0.len() != n {
        return Err(CoreError::DimensionMismatch(
            "initial state length does not match the system".into(),
        ));
    }
    if law.channels() != sys.channels() {
        return Err(CoreError::DimensionMismatch(format!(
            "law drives {} channels, system has {}",
            law.channels(),
            sys.channels()
        )));
    }
    if !(t_final.is_finite() && t_final >= T::zero()) {
        return Err(CoreError::InvalidInput(
            "final time must be nonnegative and finite".into(),
        ));
    }
    if x0.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(CoreError::NonFinite("initial state".into()));
    }

    let mut x = x0.to_vec();
    let mut t = T::zero();
    for (k, u) in law.values().iter().enumerate() {
        if t >= t_final {
            break;
        }
        let t1 = law.breakpoints()[k + 1].min(t_final);
        let dt = t1 - t;
        if dt > T::zero() {
            x = step_constant_input(sys, &x, &sys.input_direction(u), dt)?;
            t = t1;
        }
    }
    if t < t_final {
        let free = expm(&sys.a.scale(t_final - t))?;
        x = apply(&free, &x);
    }
    Ok(x)
}

fn apply<T: Real>(m: &ComplexMatrix<T>, v: &[Complex<T>]) -> Vec<Complex<T>> {
    (0..m.n())
        .map(|i| {
            (0..m.n())
                .map(|j| m[(i, j)] * v[j])
                .fold(Complex::new(T::zero(), T::zero()), |s, z| s + z)
        })
        .collect()
}

/// One interval of x' = A x + c integrated exactly via the augmented
/// exponential.
fn step_constant_input<T: Real>(
    sys: &LinearSystem<T>,
    x: &[Complex<T>],
    c: &[Complex<T>],
    dt: T,
) -> Result<Vec<Complex<T>>> {
    let n = sys.n();
    let aug = ComplexMatrix::from_fn(n + 1, |i, j| {
        if i < n && j < n {
            sys.a[(i, j)]
        } else if i < n && j == n {
            c[i]
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    let flow = expm(&aug.scale(dt))?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = flow[(i, n)];
        for j in 0..n {
            s = s + flow[(i, j)] * x[j];
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[f64]) -> Vec<Complex<f64>> {
        v.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }

    fn double_integrator() -> LinearSystem<f64> {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        LinearSystem::new(a, vec![re(&[0.0, 1.0])]).unwrap()
    }

    #[test]
    fn kalman_rank_examples() {
        assert_eq!(kalman_rank(&double_integrator()).unwrap(), 2);

        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let decoupled = LinearSystem::new(a.clone(), vec![re(&[1.0, 0.0])]).unwrap();
        assert_eq!(kalman_rank(&decoupled).unwrap(), 1);

        let dead = LinearSystem::new(a, vec![re(&[0.0, 0.0])]).unwrap();
        assert_eq!(kalman_rank(&dead).unwrap(), 0);

        // Both modes excited: two columns.
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let full = LinearSystem::new(a, vec![re(&[1.0, 0.0]), re(&[0.0, 1.0])]).unwrap();
        assert_eq!(kalman_rank(&full).unwrap(), 2);
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        let a = ComplexMatrix::<f64>::identity(2);
        assert!(LinearSystem::new(a.clone(), vec![]).is_err());
        assert!(LinearSystem::new(a, vec![re(&[1.0])]).is_err());
    }

    #[test]
    fn double_integrator_endpoint() {
        let sys = double_integrator();
        let law = ControlLaw::constant(vec![1.0], 1.0).unwrap();
        let x = linear_solution(&sys, &law, 1.0, &re(&[0.0, 0.0])).unwrap();
        assert!((x[0].re - 0.5).abs() < 1e-12, "p1 = {}", x[0].re);
        assert!((x[1].re - 1.0).abs() < 1e-12, "p2 = {}", x[1].re);
        assert!(x[0].im.abs() < 1e-15 && x[1].im.abs() < 1e-15);
    }

    #[test]
    fn endpoint_truncates_and_extends() {
        let sys = double_integrator();
        let law = ControlLaw::constant(vec![1.0], 1.0).unwrap();
        // Stop inside the law: x2 = t, x1 = t^2/2.
        let x = linear_solution(&sys, &law, 0.3, &re(&[0.0, 0.0])).unwrap();
        assert!((x[0].re - 0.045).abs() < 1e-12);
        assert!((x[1].re - 0.3).abs() < 1e-12);
        // Past the law the input is zero: free flow from (1/2, 1).
        let x = linear_solution(&sys, &law, 2.0, &re(&[0.0, 0.0])).unwrap();
        assert!((x[0].re - 1.5).abs() < 1e-12);
        assert!((x[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_time_returns_the_start() {
        let sys = double_integrator();
        let law = ControlLaw::constant(vec![1.0], 1.0).unwrap();
        let x = linear_solution(&sys, &law, 0.0, &re(&[0.7, -0.2])).unwrap();
        assert_eq!((x[0].re, x[1].re), (0.7, -0.2));
    }

    #[test]
    fn oscillator_matches_the_closed_form() {
        // x'' = -x forced by u = 1: particular solution x = 1.
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let sys = LinearSystem::new(a, vec![re(&[0.0, 1.0])]).unwrap();
        let t = 2.0;
        let law = ControlLaw::constant(vec![1.0], t).unwrap();
        let x = linear_solution(&sys, &law, t, &re(&[0.0, 0.0])).unwrap();
        assert!((x[0].re - (1.0 - t.cos())).abs() < 1e-12);
        assert!((x[1].re - t.sin()).abs() < 1e-12);
    }
}
