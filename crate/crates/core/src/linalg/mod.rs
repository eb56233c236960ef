//! Dense real symmetric linear algebra plus the small amount of complex
//! matrix arithmetic the observable construction needs.

mod complex;
mod eigen;
mod gram;
mod sym;

pub use complex::{ComplexMatrix, ComplexVector};
pub use eigen::{min_eigenvalue, sym_eigen, Spectrum, JACOBI_MAX_SWEEPS, JACOBI_REL_TOL};
pub use gram::{gram_from_vectors, vectors_from_gram, DEFAULT_PSD_TOL};
pub use sym::SymMatrix;

/// Euclidean inner product. Panics if lengths differ.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean norm.
#[inline]
pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}
