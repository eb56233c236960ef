use alloc::vec::Vec;

use super::{dot, sym_eigen, SymMatrix};
use crate::error::{Error, Result};

/// Default absolute tolerance on negative eigenvalues when treating a matrix
/// as positive semidefinite.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Gram matrix `G[i][j] = v_i · v_j`.
pub fn gram_from_vectors(vectors: &[Vec<f64>]) -> Result<SymMatrix> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let len = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
        return Err(Error::LengthMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    Ok(SymMatrix::from_fn(vectors.len(), |i, j| {
        dot(&vectors[i], &vectors[j])
    }))
}

/// Factors `G = BᵀB` and returns the columns of `B`.
///
/// Each returned vector has length `G.dim()`. Eigenvalues in `[-tol, 0)` are
/// clipped to zero; anything more negative is rejected with
/// [`Error::NotPsd`].
pub fn vectors_from_gram(g: &SymMatrix, tol: f64) -> Result<Vec<Vec<f64>>> {
    let sp = sym_eigen(g)?;
    let min = sp.min();
    if min < -tol {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
            tol,
        });
    }
    let n = g.dim();
    let roots: Vec<f64> = sp
        .eigenvalues()
        .iter()
        .map(|&x| libm::sqrt(x.max(0.0)))
        .collect();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|k| roots[k] * sp.vector_component(i, k))
                .collect()
        })
        .collect())
}
