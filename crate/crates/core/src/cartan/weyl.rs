//! Weyl orbits of diagonal algebra elements and the convex-hull
//! (majorization) test for diagonal projections of adjoint orbits.

use crate::cartan::{CartanPair, PairFamily};
use crate::error::{CoreError, Result};
use crate::matrix::ComplexMatrix;
use crate::random::{haar_orthogonal, rng_from_seed};
use crate::report::Report;
use crate::scalar::{as_f64, real, Real};
use crate::tol;
use itertools::Itertools;
use num_complex::Complex;

fn diagonal_coords<T: Real>(
    x: &ComplexMatrix<T>,
    pair: &CartanPair<T>,
) -> Result<Vec<T>> {
    if pair.family() != PairFamily::SuN {
        return Err(CoreError::InvalidInput(
            "orbit computation requires the su(n) rotation pair".into(),
        ));
    }
    let h = pair.h().expect("built su(n) pairs carry h");
    if x.n() != pair.ambient_n() {
        return Err(CoreError::DimensionMismatch(format!(
            "pair is {0}x{0}, input is {1}x{1}",
            pair.ambient_n(),
            x.n()
        )));
    }
    if !h.contains(x, real(tol::SPAN_MEMBERSHIP))? {
        return Err(CoreError::InvalidInput(
            "element is outside the diagonal subspace h".into(),
        ));
    }
    Ok((0..x.n()).map(|a| x[(a, a)].im).collect())
}

/// All distinct permutations of a diagonal element of h, i.e. its orbit
/// under the Weyl group of the su(n) pair. Deduplicated componentwise
/// and sorted lexicographically for deterministic output.
pub fn weyl_orbit<T: Real>(
    x: &ComplexMatrix<T>,
    pair: &CartanPair<T>,
) -> Result<Vec<ComplexMatrix<T>>> {
    let d = diagonal_coords(x, pair)?;
    let n = d.len();
    let mut vectors: Vec<Vec<T>> = (0..n)
        .permutations(n)
        .map(|idx| idx.into_iter().map(|j| d[j]).collect())
        .collect();
    vectors.sort_by(|a, b| {
        a.partial_cmp(b).expect("membership check rejects non-finite input")
    });
    let dedup = real::<T>(tol::WEYL_DEDUP);
    vectors.dedup_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .all(|(&x, &y)| (x - y).abs() <= dedup)
    });
    Ok(vectors
        .into_iter()
        .map(|v| {
            ComplexMatrix::diagonal(
                &v.into_iter()
                    .map(|t| Complex::new(T::zero(), t))
                    .collect::<Vec<_>>(),
            )
        })
        .collect())
}

/// Majorization test: is `d` inside the convex hull of the permutations
/// of `lam`? True iff the sorted-descending partial sums of `d` never
/// exceed those of `lam` (within `tol`) and the totals agree. Returns
/// the verdict together with the worst violation.
pub fn majorized_by<T: Real>(d: &[T], lam: &[T], tol: T) -> (bool, T) {
    assert_eq!(d.len(), lam.len(), "majorization needs equal lengths");
    let sort_desc = |v: &[T]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
        s
    };
    let ds = sort_desc(d);
    let ls = sort_desc(lam);
    let mut worst = T::zero();
    let mut run_d = T::zero();
    let mut run_l = T::zero();
    for (a, b) in ds.iter().zip(ls.iter()) {
        run_d = run_d + *a;
        run_l = run_l + *b;
        worst = worst.max(run_d - run_l);
    }
    worst = worst.max((run_d - run_l).abs());
    (worst <= tol, worst)
}

/// Monte-Carlo check that diagonal projections of the adjoint orbit of
/// `x` stay inside the convex hull of its Weyl orbit.
///
/// Draws `samples` Haar-random rotations k, conjugates x, extracts the
/// diagonal (the orthogonal projection onto h), and tests majorization
/// against x's own diagonal. The report lists any violations plus a
/// final violation count; the expected count is zero.
pub fn kostant_check<T: Real>(
    x: &ComplexMatrix<T>,
    pair: &CartanPair<T>,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    if samples == 0 {
        return Err(CoreError::InvalidInput(
            "at least one sample is required".into(),
        ));
    }
    let lam = diagonal_coords(x, pair)?;
    let n = lam.len();
    let mtol = real::<T>(tol::MAJORIZATION);
    let mut rng = rng_from_seed(seed);
    let mut report = Report::new();
    let mut violations = 0usize;
    for s in 0..samples {
        let k = haar_orthogonal::<T>(n, &mut rng);
        let conj = &(&k * x) * &k.transpose();
        let d: Vec<T> = (0..n).map(|a| conj[(a, a)].im).collect();
        let (ok, worst) = majorized_by(&d, &lam, mtol);
        if !ok {
            violations += 1;
            report.check(
                &format!("sample {s} diagonal inside the orbit hull"),
                as_f64(worst),
                tol::MAJORIZATION,
            );
        }
    }
    report.check("convex hull violations", violations as f64, 0.0);
    Ok(report)
}
