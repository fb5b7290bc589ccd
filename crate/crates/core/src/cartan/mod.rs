//! Symmetric decompositions g = k + p: built-in pair families, structure
//! verification, KAK factorizations, Weyl orbits, and diagonal-projection
//! checks.

pub mod kak;
pub mod weyl;

pub use kak::{kak_su2, kak_sun, kp_decompose, verify_kp_decomposition, KakFactors, KpFactors};
pub use weyl::{kostant_check, majorized_by, weyl_orbit};

use crate::error::{CoreError, Result};
use crate::matrix::{c, commutator, frobenius_inner, ComplexMatrix};
use crate::report::Report;
use crate::scalar::{as_f64, real, Real};
use crate::su2::{sigma_x, sigma_y, sigma_z};
use crate::subspace::Subspace;
use num_complex::Complex;
use serde::Serialize;

/// Which built-in decomposition a [`CartanPair`] came from. The family
/// fixes the K-subgroup membership test, the KAK algorithm, and the
/// metric normalization on p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairFamily {
    /// su(2) with k = span{sigma_z}, p = span{sigma_x, sigma_y}.
    Su2Pauli,
    /// su(n) with k = so(n) and p = i (traceless real symmetric).
    SuN,
    /// so(n, 1) with k the rotation block and p the boost column.
    SoN1,
}

/// An orthogonal splitting g = k + p with an optional maximal abelian
/// subspace h inside p.
///
/// Instances come from the `build_*` constructors; [`verify_cartan`]
/// re-checks the bracket relations numerically.
#[derive(Debug, Clone)]
pub struct CartanPair<T: Real> {
    family: PairFamily,
    ambient_n: usize,
    k: Subspace<T>,
    p: Subspace<T>,
    h: Option<Subspace<T>>,
}

impl<T: Real> CartanPair<T> {
    fn new(
        family: PairFamily,
        k: Subspace<T>,
        p: Subspace<T>,
        h: Option<Subspace<T>>,
    ) -> Result<Self> {
        let n = k.ambient_n();
        if p.ambient_n() != n || h.as_ref().is_some_and(|h| h.ambient_n() != n) {
            return Err(CoreError::DimensionMismatch(
                "pair components live in different ambient dimensions".into(),
            ));
        }
        if k.dim() == 0 || p.dim() == 0 {
            return Err(CoreError::InvalidInput(
                "pair components must be nonzero subspaces".into(),
            ));
        }
        Ok(Self { family, ambient_n: n, k, p, h })
    }

    pub fn family(&self) -> PairFamily {
        self.family
    }

    /// Matrix dimension of the ambient algebra elements.
    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn k(&self) -> &Subspace<T> {
        &self.k
    }

    pub fn p(&self) -> &Subspace<T> {
        &self.p
    }

    pub fn h(&self) -> Option<&Subspace<T>> {
        self.h.as_ref()
    }

    /// Scale factor turning the Frobenius inner product into the metric
    /// on p under which the closed-form geodesics are unit speed.
    pub fn metric_scale(&self) -> T {
        match self.family {
            PairFamily::Su2Pauli => real(2.0),
            PairFamily::SuN | PairFamily::SoN1 => T::one(),
        }
    }
}

fn e_ab<T: Real>(n: usize, a: usize, b: usize, value: Complex<T>) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(n);
    m[(a, b)] = value;
    m
}

/// The su(2) pair with k = span{sigma_z}, p = span{sigma_x, sigma_y},
/// h = span{sigma_x}.
pub fn build_su2_pauli<T: Real>() -> CartanPair<T> {
    let k = Subspace::from_span(2, &[sigma_z()]).expect("static span");
    let p = Subspace::from_span(2, &[sigma_x(), sigma_y()]).expect("static span");
    let h = Subspace::from_span(2, &[sigma_x()]).expect("static span");
    CartanPair::new(PairFamily::Su2Pauli, k, p, Some(h)).expect("static pair")
}

/// The su(n) pair: k = real antisymmetric (dim n(n-1)/2), p = i times
/// traceless real symmetric (dim n(n+1)/2 - 1), h = i times traceless
/// real diagonal (dim n-1). Errors for n < 2.
pub fn build_su_n<T: Real>(n: usize) -> Result<CartanPair<T>> {
    if n < 2 {
        return Err(CoreError::InvalidInput(format!(
            "pair needs matrix dimension at least 2, got {n}"
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    let i_unit = Complex::new(T::zero(), T::one());
    let mut k_gens = Vec::new();
    let mut p_gens = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            k_gens.push(&e_ab(n, a, b, one) - &e_ab(n, b, a, one));
            p_gens.push(&e_ab(n, a, b, i_unit) + &e_ab(n, b, a, i_unit));
        }
    }
    let mut h_gens = Vec::new();
    for a in 0..n - 1 {
        h_gens.push(&e_ab(n, a, a, i_unit) - &e_ab(n, a + 1, a + 1, i_unit));
    }
    p_gens.extend(h_gens.iter().cloned());
    let k = Subspace::from_span(n, &k_gens)?;
    let p = Subspace::from_span(n, &p_gens)?;
    let h = Subspace::from_span(n, &h_gens)?;
    CartanPair::new(PairFamily::SuN, k, p, Some(h))
}

/// The so(n, 1) pair on (n+1)x(n+1) real matrices: k = antisymmetric
/// upper-left blocks (dim n(n-1)/2), p = symmetric border blocks (dim n),
/// h = the first boost direction. Errors for n < 2.
pub fn build_so_n1<T: Real>(n: usize) -> Result<CartanPair<T>> {
    if n < 2 {
        return Err(CoreError::InvalidInput(format!(
            "pair needs block dimension at least 2, got {n}"
        )));
    }
    let m = n + 1;
    let one = Complex::new(T::one(), T::zero());
    let mut k_gens = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            k_gens.push(&e_ab(m, a, b, one) - &e_ab(m, b, a, one));
        }
    }
    let p_gens: Vec<_> = (0..n)
        .map(|a| &e_ab(m, a, n, one) + &e_ab(m, n, a, one))
        .collect();
    let k = Subspace::from_span(m, &k_gens)?;
    let h = Subspace::from_span(m, &p_gens[..1])?;
    let p = Subspace::from_span(m, &p_gens)?;
    CartanPair::new(PairFamily::SoN1, k, p, Some(h))
}

/// The indefinite metric diag(1, ..., 1, -1) preserved by the so(n, 1)
/// family on (n+1)-dimensional space.
pub fn minkowski_j<T: Real>(m: usize) -> ComplexMatrix<T> {
    let mut j = ComplexMatrix::identity(m);
    j[(m - 1, m - 1)] = c(-1.0, 0.0);
    j
}

/// Matrix of `[x, .]` compressed onto a basis list, with no closure or
/// membership checks; used for the Killing form inside reports.
fn compressed_ad<T: Real>(
    x: &ComplexMatrix<T>,
    basis: &[ComplexMatrix<T>],
) -> Result<ComplexMatrix<T>> {
    let d = basis.len();
    let mut m = ComplexMatrix::zeros(d);
    for (j, bj) in basis.iter().enumerate() {
        let br = commutator(x, bj)?;
        for (i, bi) in basis.iter().enumerate() {
            m[(i, j)] = Complex::new(frobenius_inner(bi, &br)?, T::zero());
        }
    }
    Ok(m)
}

/// Checks the defining relations of a symmetric pair and returns a
/// per-condition report: bracket containments [k,k] in k, [p,k] in p,
/// [p,p] in k, Killing-form orthogonality of k and p, and (when h is
/// present) h in p and h abelian. Never errors on structural failure;
/// those become failing entries.
pub fn verify_cartan<T: Real>(pair: &CartanPair<T>, tol: T) -> Result<Report> {
    let tol_f = as_f64(tol);
    let mut report = Report::new();
    let kb = pair.k.basis();
    let pb = pair.p.basis();

    let mut worst = 0.0f64;
    for i in 0..kb.len() {
        for bj in &kb[i + 1..] {
            let b = commutator(&kb[i], bj)?;
            worst = worst.max(as_f64(pair.k.projection_defect(&b)?));
        }
    }
    report.check("[k, k] contained in k", worst, tol_f);

    worst = 0.0;
    for bp in pb {
        for bk in kb {
            let b = commutator(bp, bk)?;
            worst = worst.max(as_f64(pair.p.projection_defect(&b)?));
        }
    }
    report.check("[p, k] contained in p", worst, tol_f);

    worst = 0.0;
    for i in 0..pb.len() {
        for bj in &pb[i + 1..] {
            let b = commutator(&pb[i], bj)?;
            worst = worst.max(as_f64(pair.k.projection_defect(&b)?));
        }
    }
    report.check("[p, p] contained in k", worst, tol_f);

    let mut combined = kb.to_vec();
    combined.extend_from_slice(pb);
    let ads_k: Vec<_> = kb
        .iter()
        .map(|x| compressed_ad(x, &combined))
        .collect::<Result<_>>()?;
    let ads_p: Vec<_> = pb
        .iter()
        .map(|x| compressed_ad(x, &combined))
        .collect::<Result<_>>()?;
    worst = 0.0;
    for ak in &ads_k {
        for ap in &ads_p {
            worst = worst.max(as_f64((ak * ap).trace().re.abs()));
        }
    }
    report.check("killing form orthogonality of k and p", worst, tol_f);

    if let Some(h) = &pair.h {
        let hb = h.basis();
        worst = 0.0;
        for bh in hb {
            worst = worst.max(as_f64(pair.p.projection_defect(bh)?));
        }
        report.check("h contained in p", worst, tol_f);

        worst = 0.0;
        for i in 0..hb.len() {
            for bj in &hb[i + 1..] {
                worst = worst.max(as_f64(commutator(&hb[i], bj)?.frobenius_norm()));
            }
        }
        report.check("h abelian", worst, tol_f);
    }
    Ok(report)
}
