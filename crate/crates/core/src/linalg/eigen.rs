//! Cyclic Jacobi eigendecomposition for Hermitian matrices.
//!
//! Chosen over a tridiagonalization pipeline because the matrices here are
//! small (n <= 32) and Jacobi keeps the accumulated eigenvector matrix
//! unitary to machine precision, which downstream decompositions rely on.

use crate::error::{CoreError, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Real};
use num_complex::Complex;

const MAX_SWEEPS: usize = 60;

/// Eigendecomposition `A = V diag(w) V^dagger` of a Hermitian matrix.
///
/// Returns eigenvalues ascending with matching eigenvector columns; each
/// column's largest-magnitude entry is made real positive, so real
/// symmetric inputs yield a real (and deterministic) eigenvector matrix.
/// Errors if `A` is not Hermitian to a loose 1e-7 relative defect.
pub fn hermitian_eigen<T: Real>(a: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    if !a.is_finite() {
        return Err(CoreError::NonFinite("eigendecomposition input".into()));
    }
    if !a.is_hermitian(real(1e-7)) {
        return Err(CoreError::InvalidInput(
            "eigendecomposition input is not Hermitian".into(),
        ));
    }
    let n = a.n();
    // Exact Hermitian symmetrization; a no-op in exact arithmetic and
    // bit-exact for already Hermitian input.
    let mut m = ComplexMatrix::from_fn(n, |i, j| {
        let avg = (a[(i, j)] + a[(j, i)].conj()).unscale(real(2.0));
        if i == j {
            Complex::new(avg.re, T::zero())
        } else {
            avg
        }
    });
    let mut v = ComplexMatrix::identity(n);
    if n <= 1 {
        let w = (0..n).map(|i| m[(i, i)].re).collect();
        return Ok((w, v));
    }

    let scale = m.frobenius_norm().max(T::min_positive_value());
    let target = scale * T::epsilon() * real(n as f64);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + m[(i, j)].norm_sqr();
            }
        }
        if (off + off).sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= scale * T::epsilon() {
                    continue;
                }
                // Phase factor turning the (p,q) block real, then a real
                // Jacobi rotation annihilating it.
                let phase = apq.unscale(r);
                let alpha = m[(p, p)].re;
                let beta = m[(q, q)].re;
                let zeta = (beta - alpha) / (r + r);
                let t = if zeta.is_zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let cth = (T::one() + t * t).sqrt().recip();
                let sth = cth * t;
                // Column rotation R = diag(1, conj(phase)) * G applied on the
                // right, and its adjoint on the left.
                let sc = phase.conj().scale(sth);
                let cph = phase.conj().scale(cth);
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = mip.scale(cth) - miq * sc;
                    m[(i, q)] = mip.scale(sth) + miq * cph;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip.scale(cth) - viq * sc;
                    v[(i, q)] = vip.scale(sth) + viq * cph;
                }
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = mpj.scale(cth) - mqj * sc.conj();
                    m[(q, j)] = mpj.scale(sth) + mqj * cph.conj();
                }
                m[(p, q)] = Complex::new(T::zero(), T::zero());
                m[(q, p)] = Complex::new(T::zero(), T::zero());
                m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
                m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());
            }
        }
    }
    if !converged {
        // One final check: quadratic convergence usually lands well under
        // target before the cap; only genuinely pathological input gets here.
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + m[(i, j)].norm_sqr();
            }
        }
        if (off + off).sqrt() > target * real(100.0) {
            return Err(CoreError::Convergence(format!(
                "Jacobi eigendecomposition did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .re
            .partial_cmp(&m[(j, j)].re)
            .expect("finite eigenvalues")
    });
    let w: Vec<T> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vs = ComplexMatrix::zeros(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        let mut best = 0usize;
        let mut best_mag = T::zero();
        for i in 0..n {
            let mag = v[(i, old_j)].norm();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        let anchor = v[(best, old_j)];
        let phase = anchor.unscale(anchor.norm().max(T::min_positive_value()));
        for i in 0..n {
            vs[(i, new_j)] = v[(i, old_j)] * phase.conj();
        }
    }
    Ok((w, vs))
}

/// [`hermitian_eigen`] specialized to real symmetric input: validates that
/// both the input and the resulting eigenvectors are real-valued.
pub fn symmetric_eigen_real<T: Real>(
    a: &ComplexMatrix<T>,
) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    if a.max_imag_abs() > real::<T>(1e-12) * T::one().max(a.frobenius_norm()) {
        return Err(CoreError::InvalidInput(
            "symmetric eigendecomposition needs a real-valued matrix".into(),
        ));
    }
    let (w, v) = hermitian_eigen(&a.real_part())?;
    debug_assert!(v.max_imag_abs() == T::zero(), "real input keeps real rotations");
    Ok((w, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;
    use crate::random::{gaussian_complex_matrix, rng_from_seed};

    type M = ComplexMatrix<f64>;

    fn reconstruct(w: &[f64], v: &M) -> M {
        let d = M::diagonal(&w.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        &(v * &d) * &v.adjoint()
    }

    #[test]
    fn known_two_by_two() {
        // Pauli-style Hermitian matrix with eigenvalues -1 and 1.
        let a = M::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let (w, v) = hermitian_eigen(&a).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
        assert!(v.is_unitary(1e-14));
        assert!((&reconstruct(&w, &v) - &a).frobenius_norm() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = rng_from_seed(7);
        for n in [2usize, 3, 5, 8] {
            let g = gaussian_complex_matrix::<f64>(n, &mut rng);
            let a = &(&g + &g.adjoint()).scale(0.5) + &M::identity(n).scale(0.25);
            let (w, v) = hermitian_eigen(&a).unwrap();
            assert!(v.is_unitary(1e-13));
            assert!(w.windows(2).all(|p| p[0] <= p[1]));
            let resid = (&reconstruct(&w, &v) - &a).frobenius_norm();
            assert!(resid < 1e-12 * a.frobenius_norm().max(1.0), "n={n} resid={resid}");
        }
    }

    #[test]
    fn real_symmetric_stays_real() {
        let a = M::from_real_rows(&[
            vec![2.0, -1.0, 0.5],
            vec![-1.0, 1.0, 0.25],
            vec![0.5, 0.25, -3.0],
        ])
        .unwrap();
        let (w, v) = symmetric_eigen_real(&a).unwrap();
        assert_eq!(v.max_imag_abs(), 0.0);
        assert!((&reconstruct(&w, &v) - &a).frobenius_norm() < 1e-13);
    }

    #[test]
    fn degenerate_eigenvalues_still_orthonormal() {
        let a = M::identity(4).scale(3.0);
        let (w, v) = hermitian_eigen(&a).unwrap();
        assert!(w.iter().all(|&x| (x - 3.0).abs() < 1e-15));
        assert!(v.is_unitary(1e-14));
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = M::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(2.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        assert!(matches!(hermitian_eigen(&a), Err(CoreError::InvalidInput(_))));
    }
}
