//! KAK factorizations U = k1 a k2 for the built-in pair families, plus
//! the rotation-times-positive (k exp(Y)) factorization derived from them.

use crate::cartan::{minkowski_j, CartanPair, PairFamily};
use crate::error::{CoreError, Result};
use crate::lie::adjoint_action;
use crate::linalg::{determinant, expm, logm_hermitian_pd, symmetric_eigen_real};
use crate::matrix::ComplexMatrix;
use crate::report::Report;
use crate::scalar::{as_f64, real, Real};
use crate::su2::{exp_sigma_x, exp_sigma_z, quaternion_coords, sigma_x};
use crate::tol;
use num_complex::Complex;

/// Result of a KAK factorization: `k1 * a * k2` reconstructs the input
/// to within `residual`.
///
/// `angles` is family-specific: `[alpha, beta, gamma]` for the SU(2)
/// closed form, the diagonal angles of `a` for SU(n).
#[derive(Debug, Clone)]
pub struct KakFactors<T: Real> {
    pub k1: ComplexMatrix<T>,
    pub a: ComplexMatrix<T>,
    pub k2: ComplexMatrix<T>,
    pub residual: T,
    pub angles: Vec<T>,
}

/// Result of the factorization g = k exp(y) with y in p.
#[derive(Debug, Clone)]
pub struct KpFactors<T: Real> {
    pub k: ComplexMatrix<T>,
    pub y: ComplexMatrix<T>,
    pub residual: T,
}

/// Closed-form SU(2) decomposition U = exp(alpha sigma_z) exp(beta
/// sigma_x) exp(gamma sigma_z), beta in [0, pi].
///
/// Tie-breaks for torus-degenerate inputs: when |nu| (or |mu|) falls
/// below the tie threshold, gamma is set to 0 and alpha carries the
/// whole phase, making the output a deterministic canonical form.
pub fn kak_su2<T: Real>(u: &ComplexMatrix<T>) -> Result<KakFactors<T>> {
    let (mu, nu) = quaternion_coords(u, real(tol::UNITARY_INPUT))?;
    let two = T::one() + T::one();
    let beta = two * nu.norm().atan2(mu.norm());
    let tie = real::<T>(tol::SU2_TIE_BREAK);
    let (alpha, gamma) = if nu.norm() <= tie {
        (two * mu.arg(), T::zero())
    } else if mu.norm() <= tie {
        (two * nu.arg(), T::zero())
    } else {
        (mu.arg() + nu.arg(), mu.arg() - nu.arg())
    };
    let k1 = exp_sigma_z(alpha);
    let a = exp_sigma_x(beta);
    let k2 = exp_sigma_z(gamma);
    let residual = (&(&(&k1 * &a) * &k2) - u).frobenius_norm();
    Ok(KakFactors { k1, a, k2, residual, angles: vec![alpha, beta, gamma] })
}

/// Orthogonally diagonalizes a symmetric unitary matrix M (its real and
/// imaginary parts commute): stage one diagonalizes Re M, stage two
/// re-diagonalizes Im M inside each eigenvalue cluster. The cluster
/// width escalates if the combined rotation leaves M insufficiently
/// diagonal.
fn diagonalize_symmetric_unitary<T: Real>(
    m: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    let n = m.n();
    let scale = T::one().max(m.frobenius_norm());
    let (wx, q1) = symmetric_eigen_real(&m.real_part())?;
    let y = &(&q1.transpose() * &m.imag_part()) * &q1;

    for widen in [1.0, 1e3, 1e6] {
        let cluster_tol = real::<T>(tol::KAK_DEGENERACY * widen);
        let mut q2 = ComplexMatrix::identity(n);
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && wx[end] - wx[end - 1] <= cluster_tol {
                end += 1;
            }
            if end - start > 1 {
                let d = end - start;
                let mut block = ComplexMatrix::zeros(d);
                for i in 0..d {
                    for j in 0..d {
                        block[(i, j)] = y[(start + i, start + j)];
                    }
                }
                let (_, qb) = symmetric_eigen_real(&block)?;
                for i in 0..d {
                    for j in 0..d {
                        q2[(start + i, start + j)] = qb[(i, j)];
                    }
                }
            }
            start = end;
        }
        let q = &q1 * &q2;
        let d = &(&q.transpose() * m) * &q;
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        if off <= real::<T>(1e-10) * scale {
            return Ok(q);
        }
    }
    Err(CoreError::Degeneracy(format!(
        "could not separate eigenvalue clusters of a {n}x{n} symmetric \
         unitary matrix after widening the cluster tolerance to {:.0e}; \
         the input is too close to a branch-cut degeneracy",
        tol::KAK_DEGENERACY * 1e6
    )))
}

/// KAK decomposition of U in SU(n) against the su(n) pair: k1, k2 real
/// special orthogonal and a = exp(i diag(angles)) with the angles
/// summing to zero.
///
/// Algorithm: diagonalize M = U U^T orthogonally, take entrywise
/// principal square roots for a, recover k2 = a^{-1} k1^T U (real by
/// construction), then repair the two determinant signs by paired
/// column/row flips and rebalance angles by 2 pi shifts.
pub fn kak_sun<T: Real>(
    u: &ComplexMatrix<T>,
    pair: &CartanPair<T>,
) -> Result<KakFactors<T>> {
    if pair.family() != PairFamily::SuN {
        return Err(CoreError::InvalidInput(
            "decomposition requires the su(n) rotation pair".into(),
        ));
    }
    let n = u.n();
    if pair.ambient_n() != n {
        return Err(CoreError::DimensionMismatch(format!(
            "pair is {}x{}, input is {n}x{n}",
            pair.ambient_n(),
            pair.ambient_n()
        )));
    }
    if n > 8 {
        return Err(CoreError::InvalidInput(format!(
            "decomposition supports matrices up to 8x8, got {n}x{n}"
        )));
    }
    if !u.is_finite() {
        return Err(CoreError::NonFinite("decomposition input".into()));
    }
    let utol = real::<T>(tol::UNITARY_INPUT);
    if !u.is_unitary(utol) {
        return Err(CoreError::InvalidInput(
            "decomposition input must be unitary".into(),
        ));
    }
    let det = determinant(u)?;
    if (det - Complex::new(T::one(), T::zero())).norm() > utol {
        return Err(CoreError::InvalidInput(
            "decomposition input must have determinant 1".into(),
        ));
    }

    let m = u * &u.transpose();
    let k1 = diagonalize_symmetric_unitary(&m)?;
    let d = &(&k1.transpose() * &m) * &k1;
    let two = T::one() + T::one();
    let mut angles: Vec<T> = (0..n).map(|j| d[(j, j)].arg() / two).collect();

    // det(a) is +-1 because det(M) = 1; force +1 so k2 can be special.
    let det_a = angles.iter().fold(Complex::new(T::one(), T::zero()), |acc, &t| {
        acc * Complex::from_polar(T::one(), t)
    });
    if det_a.re < T::zero() {
        angles[0] = angles[0] + real(std::f64::consts::PI);
    }
    // The angle sum is a multiple of 2 pi; shift extremes until it is 0.
    let two_pi = real::<T>(2.0 * std::f64::consts::PI);
    let pi = real::<T>(std::f64::consts::PI);
    for _ in 0..2 * n {
        let sum: T = angles.iter().copied().sum();
        if sum > pi {
            let jmax = (0..n).max_by(|&a, &b| angles[a].partial_cmp(&angles[b]).unwrap()).unwrap();
            angles[jmax] = angles[jmax] - two_pi;
        } else if sum < -pi {
            let jmin = (0..n).min_by(|&a, &b| angles[a].partial_cmp(&angles[b]).unwrap()).unwrap();
            angles[jmin] = angles[jmin] + two_pi;
        } else {
            break;
        }
    }

    let a_entries: Vec<Complex<T>> = angles
        .iter()
        .map(|&t| Complex::from_polar(T::one(), t))
        .collect();
    let a = ComplexMatrix::diagonal(&a_entries);
    let a_inv = ComplexMatrix::diagonal(
        &a_entries.iter().map(|z| z.conj()).collect::<Vec<_>>(),
    );
    let mut k1 = k1;
    let mut k2 = &(&a_inv * &k1.transpose()) * u;

    if determinant(&k1)?.re < T::zero() {
        // Flip column 0 of k1 and row 0 of k2; a is untouched because a
        // diagonal sign commutes through the diagonal factor.
        for i in 0..n {
            k1[(i, 0)] = -k1[(i, 0)];
            k2[(0, i)] = -k2[(0, i)];
        }
    }

    let imag = k2.max_imag_abs();
    if imag > real::<T>(1e-7) {
        return Err(CoreError::Degeneracy(format!(
            "square-root branch inconsistency: the recovered rotation \
             factor has imaginary part {:.2e}",
            as_f64(imag)
        )));
    }

    let residual = (&(&(&k1 * &a) * &k2) - u).frobenius_norm();
    Ok(KakFactors { k1, a, k2, residual, angles })
}

fn su_n_input_check<T: Real>(g: &ComplexMatrix<T>) -> Result<()> {
    let utol = real::<T>(tol::UNITARY_INPUT);
    if !g.is_unitary(utol) {
        return Err(CoreError::InvalidInput(
            "factorization input must be unitary".into(),
        ));
    }
    Ok(())
}

fn so_n1_input_check<T: Real>(g: &ComplexMatrix<T>) -> Result<()> {
    let m = g.n();
    if g.max_imag_abs() > real::<T>(tol::UNITARY_INPUT) {
        return Err(CoreError::InvalidInput(
            "hyperbolic factorization input must be real".into(),
        ));
    }
    let j = minkowski_j::<T>(m);
    let defect = (&(&(&g.transpose() * &j) * g) - &j).frobenius_norm();
    let scale = T::one().max(g.frobenius_norm() * g.frobenius_norm());
    if defect > real::<T>(tol::KP_RESIDUAL) * scale {
        return Err(CoreError::InvalidInput(
            "input does not preserve the indefinite metric".into(),
        ));
    }
    if g[(m - 1, m - 1)].re <= T::zero() || determinant(g)?.re <= T::zero() {
        return Err(CoreError::InvalidInput(
            "input is outside the identity component".into(),
        ));
    }
    Ok(())
}

/// Factors a group element as g = k exp(y) with k in the rotation
/// subgroup and y in p.
///
/// SU(n) route: KAK with the middle and right factors absorbed into
/// exp(y). Hyperbolic route: polar decomposition, with y half the
/// logarithm of g^T g. Errors on inputs outside the relevant group.
pub fn kp_decompose<T: Real>(
    g: &ComplexMatrix<T>,
    pair: &CartanPair<T>,
) -> Result<KpFactors<T>> {
    if g.n() != pair.ambient_n() {
        return Err(CoreError::DimensionMismatch(format!(
            "pair is {0}x{0}, input is {1}x{1}",
            pair.ambient_n(),
            g.n()
        )));
    }
    match pair.family() {
        PairFamily::Su2Pauli => {
            let f = kak_su2(g)?;
            let (alpha, beta, gamma) = (f.angles[0], f.angles[1], f.angles[2]);
            let k = exp_sigma_z(alpha + gamma);
            // g = e^{a z} e^{b x} e^{c z} = e^{(a+c) z} Ad(e^{-c z})(e^{b x}).
            let y = adjoint_action(&exp_sigma_z(-gamma), &sigma_x().scale(beta))?;
            let residual = (&(&k * &expm(&y)?) - g).frobenius_norm();
            Ok(KpFactors { k, y, residual })
        }
        PairFamily::SuN => {
            su_n_input_check(g)?;
            let f = kak_sun(g, pair)?;
            let k = &f.k1 * &f.k2;
            let i_theta = ComplexMatrix::diagonal(
                &f.angles
                    .iter()
                    .map(|&t| Complex::new(T::zero(), t))
                    .collect::<Vec<_>>(),
            );
            let y = &(&f.k2.transpose() * &i_theta) * &f.k2;
            let residual = (&(&k * &expm(&y)?) - g).frobenius_norm();
            Ok(KpFactors { k, y, residual })
        }
        PairFamily::SoN1 => {
            so_n1_input_check(g)?;
            let h = &g.transpose() * g;
            let y = logm_hermitian_pd(&h)?.scale(real(0.5));
            let defect = pair.p().projection_defect(&y)?;
            if defect > real::<T>(tol::KP_RESIDUAL) * T::one().max(y.frobenius_norm()) {
                return Err(CoreError::InvalidInput(
                    "symmetric logarithm escapes p; input is not in the group".into(),
                ));
            }
            let k = g * &expm(&y.scale(-T::one()))?;
            let residual = (&(&k * &expm(&y)?) - g).frobenius_norm();
            Ok(KpFactors { k, y, residual })
        }
    }
}

/// Runs [`kp_decompose`] and reports the reconstruction residual, the
/// subgroup membership of the rotation factor, and the p-membership of
/// the symmetric factor.
pub fn verify_kp_decomposition<T: Real>(
    g: &ComplexMatrix<T>,
    pair: &CartanPair<T>,
) -> Result<Report> {
    let f = kp_decompose(g, pair)?;
    let mut report = Report::new();
    let t = tol::KP_RESIDUAL;
    report.check("reconstruction g = k exp(y)", as_f64(f.residual), t);

    let k = &f.k;
    let n = k.n();
    let subgroup_defect = match pair.family() {
        PairFamily::Su2Pauli => {
            // K is the diagonal torus.
            k[(0, 1)].norm().max(k[(1, 0)].norm())
        }
        PairFamily::SuN => {
            let orth = (&(&k.transpose() * k) - &ComplexMatrix::identity(n)).frobenius_norm();
            let det = (determinant(k)? - Complex::new(T::one(), T::zero())).norm();
            k.max_imag_abs().max(orth).max(det)
        }
        PairFamily::SoN1 => {
            let orth = (&(&k.transpose() * k) - &ComplexMatrix::identity(n)).frobenius_norm();
            let det = (determinant(k)? - Complex::new(T::one(), T::zero())).norm();
            let mut border = (k[(n - 1, n - 1)] - Complex::new(T::one(), T::zero())).norm();
            for a in 0..n - 1 {
                border = border.max(k[(a, n - 1)].norm()).max(k[(n - 1, a)].norm());
            }
            orth.max(det).max(border).max(k.max_imag_abs())
        }
    };
    report.check("k factor in designated subgroup", as_f64(subgroup_defect), t);
    report.check(
        "y factor in p",
        as_f64(pair.p().projection_defect(&f.y)?),
        t,
    );
    Ok(report)
}
