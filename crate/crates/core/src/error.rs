use alloc::boxed::Box;

use thiserror::Error;

use crate::sdp::PrimalSolution;

/// Errors produced by the bound computations.
#[allow(missing_docs)]
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("coefficient matrix is empty")]
    EmptyMatrix,
    #[error("inequality name is empty")]
    EmptyName,
    #[error("input collection is empty")]
    EmptyInput,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("size must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e} below -{tol:e})")]
    NotPsd { min_eigenvalue: f64, tol: f64 },
    #[error("factorization rank must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error(
        "coordinate ascent stopped after {} sweeps with residual {:e}",
        .partial.iterations,
        .partial.residual
    )]
    MaxIterReached { partial: Box<PrimalSolution> },
    #[error("{what} = {size} exceeds the supported limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("vector {index} has norm {norm}, expected a unit vector")]
    NotUnitVector { index: usize, norm: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("setting counts differ: inequality is {expected:?}, realization is {found:?}")]
    SettingCountMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("closed-form eigenpair check failed with residual {0:e}")]
    ClosedFormMismatch(f64),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;
