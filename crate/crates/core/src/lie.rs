//! Lie-algebra operations: bracket closures, rank conditions, adjoint
//! representations, and the Killing form.

use crate::error::{CoreError, Result};
use crate::linalg::solve::inverse;
use crate::matrix::{commutator, frobenius_inner, ComplexMatrix};
use crate::scalar::{real, Real};
use crate::subspace::Subspace;
use crate::tol;

/// Iteration cap for the closure worklist; each round can only grow the
/// dimension, so 64 rounds is far beyond any ambient space in scope.
const CLOSURE_ROUNDS: usize = 64;

/// Smallest subalgebra containing `generators`, as an orthonormal basis.
///
/// Worklist algorithm: each round brackets the newly added directions
/// against the full basis and absorbs independent remainders (modified
/// Gram-Schmidt, relative drop tolerance [`tol::RANK_REL`]). Stops when a
/// round adds nothing or the dimension reaches `max_dim` (a documented
/// cap: pass the ambient algebra dimension to detect full closures).
pub fn lie_closure<T: Real>(
    generators: &[ComplexMatrix<T>],
    max_dim: usize,
) -> Result<Subspace<T>> {
    if generators.is_empty() {
        return Err(CoreError::InvalidInput(
            "closure needs at least one generator".into(),
        ));
    }
    let n = generators[0].n();
    if generators.iter().any(|g| g.n() != n) {
        return Err(CoreError::DimensionMismatch(
            "generators mix matrix dimensions".into(),
        ));
    }
    if generators.iter().any(|g| !g.is_finite()) {
        return Err(CoreError::NonFinite("closure generator".into()));
    }
    let drop_tol = real::<T>(tol::RANK_REL);
    let mut basis = Subspace::from_span_with_tol(n, generators, drop_tol)?;
    let mut frontier_start = 0usize;

    for _ in 0..CLOSURE_ROUNDS {
        if basis.dim() >= max_dim {
            return Ok(basis);
        }
        let round_dim = basis.dim();
        let mut grew = false;
        'outer: for i in frontier_start..round_dim {
            for j in 0..round_dim {
                let b = commutator(&basis.basis()[i], &basis.basis()[j])?;
                if basis.try_absorb(&b, drop_tol)? {
                    grew = true;
                    if basis.dim() >= max_dim {
                        break 'outer;
                    }
                }
            }
        }
        if !grew {
            return Ok(basis);
        }
        frontier_start = round_dim;
    }
    Err(CoreError::Convergence(format!(
        "closure did not stabilize within {CLOSURE_ROUNDS} rounds"
    )))
}

/// Bracket-generating (controllability) rank condition: does the closure
/// of `generators` fill an `ambient_dim`-dimensional algebra?
pub fn is_controllable_rank<T: Real>(
    generators: &[ComplexMatrix<T>],
    ambient_dim: usize,
) -> Result<bool> {
    Ok(lie_closure(generators, ambient_dim)?.dim() == ambient_dim)
}

fn ensure_bracket_closed<T: Real>(basis: &Subspace<T>) -> Result<()> {
    let member_tol = real::<T>(tol::SPAN_MEMBERSHIP);
    for (i, a) in basis.basis().iter().enumerate() {
        for b in &basis.basis()[i + 1..] {
            let c = commutator(a, b)?;
            if !basis.contains(&c, member_tol)? {
                return Err(CoreError::InvalidInput(
                    "basis is not bracket-closed".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Matrix of `ad_x = [x, .]` in the orthonormal basis of a bracket-closed
/// subspace: column j holds the coordinates of `[x, b_j]`.
///
/// Errors if the basis is not bracket-closed or `x` is outside its span.
pub fn ad_matrix<T: Real>(
    x: &ComplexMatrix<T>,
    basis: &Subspace<T>,
) -> Result<ComplexMatrix<T>> {
    ensure_bracket_closed(basis)?;
    if !basis.contains(x, real(tol::SPAN_MEMBERSHIP))? {
        return Err(CoreError::InvalidInput(
            "element is outside the span of the basis".into(),
        ));
    }
    let d = basis.dim();
    let mut m = ComplexMatrix::zeros(d);
    for (j, bj) in basis.basis().iter().enumerate() {
        let br = commutator(x, bj)?;
        for (i, bi) in basis.basis().iter().enumerate() {
            m[(i, j)] = num_complex::Complex::new(frobenius_inner(bi, &br)?, T::zero());
        }
    }
    Ok(m)
}

/// Killing form `B(x, y) = tr(ad_x ad_y)` over a bracket-closed basis.
pub fn killing_form<T: Real>(
    x: &ComplexMatrix<T>,
    y: &ComplexMatrix<T>,
    basis: &Subspace<T>,
) -> Result<T> {
    let ax = ad_matrix(x, basis)?;
    let ay = ad_matrix(y, basis)?;
    Ok((&ax * &ay).trace().re)
}

/// Adjoint action `g x g^{-1}`; errors if `g` is singular.
pub fn adjoint_action<T: Real>(
    g: &ComplexMatrix<T>,
    x: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    if g.n() != x.n() {
        return Err(CoreError::DimensionMismatch(
            "group element and algebra element dimensions differ".into(),
        ));
    }
    let ginv = inverse(g)?;
    Ok(&(g * x) * &ginv)
}
