use alloc::vec::Vec;
use core::cmp::Ordering;

use super::SymMatrix;
use crate::error::{Error, Result};

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of the input's Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-13;

/// Sweep cap for the Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;

// Components below this magnitude are skipped when fixing eigenvector signs.
const SIGN_EPS: f64 = 1e-12;

/// Full eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted ascending; column `k` of the eigenvector matrix
/// pairs with eigenvalue `k`. Each eigenvector is oriented so that its first
/// non-negligible component is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    dim: usize,
    values: Vec<f64>,
    // row-major dim×dim, columns are eigenvectors
    vectors: Vec<f64>,
    sweeps: usize,
}

impl Spectrum {
    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvector paired with eigenvalue `k`.
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.vectors[i * self.dim + k])
            .collect()
    }

    /// Component `i` of eigenvector `k`, i.e. `Q[i][k]`.
    #[inline]
    pub fn vector_component(&self, i: usize, k: usize) -> f64 {
        self.vectors[i * self.dim + k]
    }

    /// Smallest eigenvalue.
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    /// Largest eigenvalue.
    pub fn max(&self) -> f64 {
        self.values[self.dim - 1]
    }

    /// Matrix order.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of Jacobi sweeps performed.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// `Q Λ Qᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        SymMatrix::from_fn(self.dim, |i, j| {
            (0..self.dim)
                .map(|k| self.vector_component(i, k) * self.values[k] * self.vector_component(j, k))
                .sum()
        })
    }
}

/// Eigendecomposition by cyclic-by-row Jacobi rotations.
///
/// Sweeps continue until the off-diagonal Frobenius norm is at most
/// [`JACOBI_REL_TOL`] times `‖S‖_F`; after [`JACOBI_MAX_SWEEPS`] sweeps the
/// call fails with [`Error::NoConvergence`] carrying the residual.
pub fn sym_eigen(s: &SymMatrix) -> Result<Spectrum> {
    let n = s.dim();
    if n == 0 {
        return Err(Error::InvalidSize(0));
    }
    let mut a = s.as_slice().to_vec();
    let mut v = SymMatrix::identity(n).as_slice().to_vec();
    let target = JACOBI_REL_TOL * s.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    for k in 0..n {
        let lead = (0..n).map(|i| v[i * n + k]).find(|x| x.abs() > SIGN_EPS);
        if matches!(lead, Some(x) if x < 0.0) {
            for i in 0..n {
                v[i * n + k] = -v[i * n + k];
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&k, &l| {
        values[k].total_cmp(&values[l]).then_with(|| {
            (0..n)
                .map(|i| v[i * n + k].total_cmp(&v[i * n + l]))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    });

    let mut vectors = alloc::vec![0.0; n * n];
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + dst] = v[i * n + src];
        }
    }
    values = order.iter().map(|&k| values[k]).collect();

    Ok(Spectrum {
        dim: n,
        values,
        vectors,
        sweeps,
    })
}

/// Smallest eigenvalue of `s`.
pub fn min_eigenvalue(s: &SymMatrix) -> Result<f64> {
    sym_eigen(s).map(|sp| sp.min())
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(sum)
}

/// Applies the rotation that annihilates `a[p][q]`: `A ← JᵀAJ`, `V ← VJ`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}
