//! Closed forms for the chained CHSH family and the two-setting CHSH
//! optimum. These serve as oracles for the numerical solver.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inequality::CorrelationInequality;
use crate::linalg::SymMatrix;

/// Tolerance on `‖A·u_s − γ_s·u_s‖` accepted by [`chained_a_spectrum`].
pub const EIGENPAIR_TOL: f64 = 1e-10;

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidSize(0))
    } else {
        Ok(())
    }
}

/// Alice's vectors and Bob's vectors.
pub type VectorPair = (Vec<Vec<f64>>, Vec<Vec<f64>>);

/// `cos(π/2n)`, the common value of every term at the quantum optimum.
/// Exact zero at `n = 1`, where the floating-point cosine leaves `6e-17`.
fn half_angle_cos(n: usize) -> f64 {
    if n == 1 {
        0.0
    } else {
        libm::cos(PI / (2 * n) as f64)
    }
}

/// Quantum maximum of the chained expression, `2n·cos(π/2n)`.
pub fn chained_quantum_bound(n: usize) -> Result<f64> {
    check_size(n)?;
    Ok(2.0 * n as f64 * half_angle_cos(n))
}

/// Classical maximum of the chained expression, `2n − 2`.
pub fn chained_classical_bound(n: usize) -> Result<f64> {
    check_size(n)?;
    Ok((2 * n - 2) as f64)
}

/// Optimal vectors for the chained expression, zero-padded to `R^{2n}`.
///
/// `x_k` sits at angle `(2k−2)·π/2n` and `y_k` at `(2k−1)·π/2n` in the first
/// coordinate plane, so consecutive vectors are `π/2n` apart and every term
/// of the expression evaluates to `cos(π/2n)`.
pub fn chained_primal_vectors(n: usize) -> Result<VectorPair> {
    check_size(n)?;
    let step = PI / (2 * n) as f64;
    let at = |angle: f64| {
        let mut v = alloc::vec![0.0; 2 * n];
        v[0] = libm::cos(angle);
        v[1] = libm::sin(angle);
        v
    };
    let xs = (1..=n).map(|k| at(step * (2 * k - 2) as f64)).collect();
    let ys = (1..=n).map(|k| at(step * (2 * k - 1) as f64)).collect();
    Ok((xs, ys))
}

/// Optimal dual vector for the chained expression: `cos(π/2n)` repeated
/// `2n` times.
pub fn chained_dual_lambda(n: usize) -> Result<Vec<f64>> {
    check_size(n)?;
    Ok(alloc::vec![half_angle_cos(n); 2 * n])
}

/// Closed-form spectrum of the Bob×Alice block `A` of the chained objective.
///
/// `A` is a circulant with its corner sign flipped, which makes it normal;
/// its eigenvectors are twisted Fourier vectors and its singular values are
/// the moduli of its eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainedSpectrum {
    /// Number of settings per side.
    pub n: usize,
    /// `γ_s = 1 + e^{iπ(2s+1)/n}`.
    pub gammas: Vec<Complex64>,
    /// `u_s = (ρ_s^{n−1}, …, ρ_s^0)` with `ρ_s = e^{−iπ(2s+1)/n}`.
    pub eigenvectors: Vec<Vec<Complex64>>,
    /// `σ_s = sqrt(2 + 2cos(π(2s+1)/n))`.
    pub sigmas: Vec<f64>,
    /// `max σ_s = 2cos(π/2n)`, the largest eigenvalue of `W`.
    pub w_max: f64,
    /// Largest `‖A·u_s − γ_s·u_s‖` observed.
    pub residual: f64,
}

impl ChainedSpectrum {
    /// The full spectrum of `W`, `{±σ_s}`, sorted ascending.
    pub fn w_eigenvalues(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.sigmas.iter().flat_map(|&s| [s, -s]).collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Builds the closed-form spectrum and checks each eigenpair against the
/// explicit matrix `A[t][s] = c[s][t]` of [`CorrelationInequality::chained`].
pub fn chained_a_spectrum(n: usize) -> Result<ChainedSpectrum> {
    let ineq = CorrelationInequality::chained(n)?;
    let mut gammas = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    let mut sigmas = Vec::with_capacity(n);
    let mut residual: f64 = 0.0;

    for s in 0..n {
        let theta = PI * (2 * s + 1) as f64 / n as f64;
        let gamma = Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, theta);
        let rho = Complex64::from_polar(1.0, -theta);
        let u: Vec<Complex64> = (0..n).map(|j| rho.powu((n - 1 - j) as u32)).collect();

        for t in 0..n {
            let au: Complex64 = (0..n).map(|k| ineq.coefficient(k, t) * u[k]).sum();
            residual = residual.max((au - gamma * u[t]).norm());
        }

        gammas.push(gamma);
        eigenvectors.push(u);
        sigmas.push(libm::sqrt((2.0 + 2.0 * libm::cos(theta)).max(0.0)));
    }
    if residual > EIGENPAIR_TOL {
        return Err(Error::ClosedFormMismatch(residual));
    }
    let w_max = sigmas.iter().copied().fold(0.0, f64::max);
    Ok(ChainedSpectrum {
        n,
        gammas,
        eigenvectors,
        sigmas,
        w_max,
        residual,
    })
}

/// The textbook CHSH optimum: the Gram matrix `G′` of
/// `x_1 = e_1, x_2 = e_2, y_{1,2} = (e_1 ± e_2)/√2` (ordering `x_1, x_2,
/// y_1, y_2`) and the dual vector `λ′ = (1,1,1,1)/√2`.
///
/// Both pair with the objective built from [`CorrelationInequality::chsh`].
pub fn chsh_known_solution() -> (SymMatrix, Vec<f64>) {
    let h = FRAC_1_SQRT_2;
    let g = SymMatrix::from_rows(&[
        alloc::vec![1.0, 0.0, h, h],
        alloc::vec![0.0, 1.0, h, -h],
        alloc::vec![h, h, 1.0, 0.0],
        alloc::vec![h, -h, 0.0, 1.0],
    ])
    .expect("4×4 literal");
    (g, alloc::vec![h; 4])
}
