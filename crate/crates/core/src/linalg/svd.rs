//! Singular values by one-sided Jacobi, and rank decisions built on them.
//!
//! One-sided Jacobi works on the rows directly (never forming the Gram
//! matrix), so small singular values keep good relative accuracy and the
//! 1e-9 relative rank cutoff is meaningful in f64.

use crate::error::{CoreError, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Real};
use crate::tol;

const MAX_SWEEPS: usize = 60;

/// Singular values, descending, of the matrix whose rows are `rows`.
///
/// All rows must share one length; an empty family yields an empty list.
pub fn singular_values_of_rows<T: Real>(rows: &[Vec<T>]) -> Result<Vec<T>> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(CoreError::DimensionMismatch(
            "rows of the family have differing lengths".into(),
        ));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(CoreError::NonFinite("singular value input".into()));
    }
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let m = a.len();
    let eps = T::epsilon() * real(8.0);

    let dot = |x: &[T], y: &[T]| -> T { x.iter().zip(y).map(|(&p, &q)| p * q).sum() };

    let mut converged = m < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..m {
            for j in i + 1..m {
                let alpha = dot(&a[i], &a[i]);
                let beta = dot(&a[j], &a[j]);
                let gamma = dot(&a[i], &a[j]);
                if gamma.abs() <= eps * (alpha * beta).sqrt() || alpha.is_zero() || beta.is_zero()
                {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = if zeta.is_zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let c = (T::one() + t * t).sqrt().recip();
                let s = c * t;
                for k in 0..a[i].len() {
                    let x = a[i][k];
                    let y = a[j][k];
                    a[i][k] = c * x - s * y;
                    a[j][k] = s * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(CoreError::Convergence(format!(
            "one-sided Jacobi did not orthogonalize the rows in {MAX_SWEEPS} sweeps"
        )));
    }
    let mut sigmas: Vec<T> = a.iter().map(|r| dot(r, r).sqrt()).collect();
    sigmas.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    Ok(sigmas)
}

/// Number of singular values exceeding `tol * sigma_max`.
pub fn rank_of_rows<T: Real>(rows: &[Vec<T>], tol: T) -> Result<usize> {
    let sigmas = singular_values_of_rows(rows)?;
    let Some(&top) = sigmas.first() else { return Ok(0) };
    Ok(sigmas.iter().filter(|&&s| s > tol * top).count())
}

/// Rank of a family of equal-dimension matrices under vectorization.
///
/// `tol` is the relative singular-value cutoff; [`tol::RANK_REL`] is the
/// default used across the crate. Empty families have rank 0.
pub fn rank_of_family<T: Real>(family: &[ComplexMatrix<T>], tol: T) -> Result<usize> {
    if family.is_empty() {
        return Ok(0);
    }
    let n = family[0].n();
    if family.iter().any(|m| m.n() != n) {
        return Err(CoreError::DimensionMismatch(
            "family mixes matrix dimensions".into(),
        ));
    }
    if family.iter().any(|m| !m.is_finite()) {
        return Err(CoreError::NonFinite("matrix family".into()));
    }
    let rows: Vec<Vec<T>> = family.iter().map(|m| m.vectorize().coords).collect();
    rank_of_rows(&rows, tol)
}

/// Default rank cutoff as a working-scalar value.
pub fn default_rank_tol<T: Real>() -> T {
    real(tol::RANK_REL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{sigma_x, sigma_y, sigma_z};

    #[test]
    fn known_singular_values() {
        let rows: Vec<Vec<f64>> = vec![vec![3.0, 0.0, 0.0], vec![0.0, -4.0, 0.0]];
        let s = singular_values_of_rows(&rows).unwrap();
        assert!((s[0] - 4.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rank_counts_with_relative_cutoff() {
        let rows = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1e-12, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        // The second row deviates from the first by 1e-12, below the
        // 1e-9 relative cutoff but visible at 1e-15.
        assert_eq!(rank_of_rows(&rows, 1e-9).unwrap(), 2);
        assert_eq!(rank_of_rows(&rows, 1e-15).unwrap(), 3);
    }

    #[test]
    fn pauli_family_has_rank_three() {
        let fam = [sigma_x::<f64>(), sigma_y(), sigma_z()];
        assert_eq!(rank_of_family(&fam, default_rank_tol()).unwrap(), 3);
    }

    #[test]
    fn dependent_and_empty_families() {
        let x = sigma_x::<f64>();
        assert_eq!(rank_of_family(&[x.clone(), x.scale(2.0)], 1e-9).unwrap(), 1);
        assert_eq!(rank_of_family::<f64>(&[], 1e-9).unwrap(), 0);
        let zero = ComplexMatrix::<f64>::zeros(2);
        assert_eq!(rank_of_family(&[zero], 1e-9).unwrap(), 0);
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let fam = [sigma_x::<f64>(), ComplexMatrix::identity(3)];
        assert!(matches!(
            rank_of_family(&fam, 1e-9),
            Err(CoreError::DimensionMismatch(_))
        ));
    }
}
