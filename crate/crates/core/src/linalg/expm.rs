//! Matrix exponential and logarithms.
//!
//! `expm` dispatches anti-Hermitian input to a Hermitian eigendecomposition
//! (the result is then unitary to machine precision) and everything else to
//! scaling-and-squaring with the degree-13 Pade approximant.

use crate::error::{CoreError, Result};
use crate::linalg::eigen::hermitian_eigen;
use crate::linalg::solve::solve;
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Real};
use crate::tol;
use num_complex::Complex;

/// Degree-13 Pade numerator coefficients (Higham's values).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm threshold above which the argument is scaled before the
/// degree-13 approximant is applied.
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential.
///
/// Anti-Hermitian input (relative defect below
/// [`tol::EXPM_ANTI_HERMITIAN`]) takes the eigendecomposition path and
/// returns a matrix unitary to roughly machine precision; all other input
/// takes the Pade path. Errors on non-finite input.
pub fn expm<T: Real>(x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !x.is_finite() {
        return Err(CoreError::NonFinite("matrix exponential input".into()));
    }
    if x.is_anti_hermitian(real(tol::EXPM_ANTI_HERMITIAN)) {
        return expm_anti_hermitian(x);
    }
    expm_pade(x)
}

/// Eigendecomposition path: `exp(X) = V exp(-i W) V^dagger` with
/// `iX = V W V^dagger` Hermitian.
fn expm_anti_hermitian<T: Real>(x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let i = Complex::new(T::zero(), T::one());
    let ix = x.scale_complex(i);
    // Exact Hermitianization; for exactly anti-Hermitian X this is bitwise iX.
    let h = (&ix + &ix.adjoint()).scale(real(0.5));
    let (w, v) = hermitian_eigen(&h)?;
    let phases: Vec<Complex<T>> = w
        .iter()
        .map(|&lam| Complex::from_polar(T::one(), -lam))
        .collect();
    let d = ComplexMatrix::diagonal(&phases);
    Ok(&(&v * &d) * &v.adjoint())
}

/// Scaling-and-squaring with the degree-13 Pade approximant.
///
/// Public so callers can cross-check the two exponential routes against
/// each other; `expm` is the right entry point otherwise.
pub fn expm_pade<T: Real>(x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !x.is_finite() {
        return Err(CoreError::NonFinite("matrix exponential input".into()));
    }
    let n = x.n();
    let norm = x.one_norm();
    let theta = real::<T>(THETA13);
    let squarings = if norm > theta {
        (norm / theta).log2().ceil().to_usize().unwrap_or(0)
    } else {
        0
    };
    let a = x.scale(real::<T>(0.5).powi(squarings as i32));

    let b: Vec<T> = PADE13.iter().map(|&c| real(c)).collect();
    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let u_inner = &(&a6.scale(b[13]) + &a4.scale(b[11])) + &a2.scale(b[9]);
    let u_poly = &(&(&(&a6 * &u_inner) + &a6.scale(b[7])) + &a4.scale(b[5]))
        + &(&a2.scale(b[3]) + &id.scale(b[1]));
    let u = &a * &u_poly;
    let v_inner = &(&a6.scale(b[12]) + &a4.scale(b[10])) + &a2.scale(b[8]);
    let v = &(&(&(&a6 * &v_inner) + &a6.scale(b[6])) + &a4.scale(b[4]))
        + &(&a2.scale(b[2]) + &id.scale(b[0]));

    let p = &v + &u;
    let q = &v - &u;
    let mut r = solve(&q, &p)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

/// Principal logarithm of a matrix near the identity, by the alternating
/// power series in `R - I`.
///
/// Errors with `StepTooLarge` once `||R - I||_F` exceeds
/// [`tol::LOG_STEP_MAX`]; trajectory code treats that as "refine the grid".
pub fn logm_series<T: Real>(r: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !r.is_finite() {
        return Err(CoreError::NonFinite("matrix logarithm input".into()));
    }
    let n = r.n();
    let e = r - &ComplexMatrix::identity(n);
    let enorm = e.frobenius_norm();
    if enorm > real(tol::LOG_STEP_MAX) {
        return Err(CoreError::StepTooLarge(format!(
            "||R - I|| = {:e} exceeds {}; use a finer grid",
            crate::scalar::as_f64(enorm),
            tol::LOG_STEP_MAX
        )));
    }
    let mut acc = e.clone();
    let mut power = e.clone();
    for k in 2..=80usize {
        power = &power * &e;
        let coeff = real::<T>(1.0 / k as f64);
        let term = power.scale(if k % 2 == 0 { -coeff } else { coeff });
        acc = &acc + &term;
        if power.frobenius_norm() * coeff
            <= T::epsilon() * real::<T>(0.25) * T::one().max(acc.frobenius_norm())
        {
            return Ok(acc);
        }
    }
    Err(CoreError::Convergence(
        "logarithm series did not converge within 80 terms".into(),
    ))
}

/// Logarithm of a Hermitian positive-definite matrix via its
/// eigendecomposition. Errors if any eigenvalue is not strictly positive.
pub fn logm_hermitian_pd<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (w, v) = hermitian_eigen(a)?;
    if w.iter().any(|&x| x <= T::zero()) {
        return Err(CoreError::InvalidInput(
            "logarithm needs a positive-definite matrix".into(),
        ));
    }
    let logs: Vec<Complex<T>> = w.iter().map(|&x| Complex::new(x.ln(), T::zero())).collect();
    let d = ComplexMatrix::diagonal(&logs);
    Ok(&(&v * &d) * &v.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;
    use crate::random::{random_anti_hermitian_traceless, rng_from_seed};
    use crate::su2::{sigma_x, sigma_z};

    type M = ComplexMatrix<f64>;

    #[test]
    fn zero_maps_to_identity() {
        let e = expm(&M::zeros(3)).unwrap();
        assert_eq!((&e - &M::identity(3)).frobenius_norm(), 0.0);
    }

    #[test]
    fn full_turn_of_sigma_z_is_minus_identity() {
        let e = expm(&sigma_z::<f64>().scale(2.0 * std::f64::consts::PI)).unwrap();
        let resid = (&e - &M::identity(2).scale(-1.0)).frobenius_norm();
        assert!(resid < 1e-12, "residual {resid}");
    }

    #[test]
    fn half_turn_of_sigma_x() {
        let e = expm(&sigma_x::<f64>().scale(std::f64::consts::PI)).unwrap();
        let want = M::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!((&e - &want).frobenius_norm() < 1e-13);
    }

    #[test]
    fn nilpotent_jordan_block() {
        let a = M::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let e = expm(&a).unwrap();
        let want = M::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]])
            .unwrap();
        assert!((&e - &want).frobenius_norm() < 1e-15);
    }

    #[test]
    fn complex_diagonal_general_path() {
        let a = M::diagonal(&[c(1.0, 2.0), c(-3.0, 0.0)]);
        let e = expm(&a).unwrap();
        let want = M::diagonal(&[c(1.0, 2.0).exp(), c(-3.0, 0.0).exp()]);
        assert!((&e - &want).frobenius_norm() < 1e-13 * want.frobenius_norm());
    }

    #[test]
    fn squaring_path_matches_closed_form_rotation() {
        // Angle large enough to force several squarings.
        let theta = 40.0 * std::f64::consts::PI + 1.2;
        let e = expm_pade(&sigma_x::<f64>().scale(theta)).unwrap();
        let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let want =
            M::from_rows(&[vec![c(ch, 0.0), c(sh, 0.0)], vec![c(-sh, 0.0), c(ch, 0.0)]]).unwrap();
        assert!((&e - &want).frobenius_norm() < 1e-10);
    }

    #[test]
    fn both_paths_agree_and_are_unitary() {
        let mut rng = rng_from_seed(11);
        for n in [2usize, 3, 5] {
            let x = random_anti_hermitian_traceless::<f64>(n, &mut rng);
            let fast = expm(&x).unwrap();
            let pade = expm_pade(&x).unwrap();
            assert!(fast.is_unitary(1e-12), "fast path unitarity, n={n}");
            let gap = (&fast - &pade).frobenius_norm();
            assert!(gap < 1e-12, "paths disagree by {gap} at n={n}");
        }
    }

    #[test]
    fn exponential_inverse_property() {
        let a = M::from_rows(&[
            vec![c(0.3, 0.1), c(-1.2, 0.4), c(0.0, 0.9)],
            vec![c(2.0, 0.0), c(0.1, -0.3), c(0.5, 0.5)],
            vec![c(-0.7, 0.2), c(0.0, 1.1), c(-0.2, 0.0)],
        ])
        .unwrap();
        let prod = &expm(&a).unwrap() * &expm(&a.scale(-1.0)).unwrap();
        assert!((&prod - &M::identity(3)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn log_roundtrips_small_generators() {
        let mut rng = rng_from_seed(5);
        let x = random_anti_hermitian_traceless::<f64>(3, &mut rng).scale(0.05);
        let back = logm_series(&expm(&x).unwrap()).unwrap();
        assert!((&back - &x).frobenius_norm() < 1e-13);
    }

    #[test]
    fn log_rejects_large_steps() {
        let big = expm(&sigma_x::<f64>().scale(3.0)).unwrap();
        assert!(matches!(logm_series(&big), Err(CoreError::StepTooLarge(_))));
    }

    #[test]
    fn positive_definite_log() {
        let a = M::diagonal(&[c(4.0, 0.0), c(9.0, 0.0)]);
        let l = logm_hermitian_pd(&a).unwrap();
        let want = M::diagonal(&[c(4f64.ln(), 0.0), c(9f64.ln(), 0.0)]);
        assert!((&l - &want).frobenius_norm() < 1e-14);
        let indef = M::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(logm_hermitian_pd(&indef).is_err());
    }

    #[test]
    fn non_finite_rejected() {
        let mut a = M::zeros(2);
        a[(0, 1)] = c(f64::INFINITY, 0.0);
        assert!(matches!(expm(&a), Err(CoreError::NonFinite(_))));
    }

    #[test]
    fn f32_smoke() {
        let e = expm(&sigma_z::<f32>().scale(2.0 * std::f32::consts::PI)).unwrap();
        let resid = (&e - &ComplexMatrix::<f32>::identity(2).scale(-1.0)).frobenius_norm();
        assert!(resid < 1e-5, "residual {resid}");
    }
}
