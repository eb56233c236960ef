//! From unit vectors to quantum observables.
//!
//! Given real unit vectors `x_s, y_t ∈ R^N`, the observables
//! `X_s = Σ_k x_s[k]·C_k` and `Y_t = (Σ_k y_t[k]·C_k)ᵀ` built from pairwise
//! anticommuting Hermitian involutions `C_k` have eigenvalues ±1 and satisfy
//! `<Ψ|X_s ⊗ Y_t|Ψ> = x_s·y_t` on the maximally entangled state
//! `Ψ = Σ_i |ii>/√d`, `d = 2^⌈N/2⌉`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::inequality::CorrelationInequality;
use crate::linalg::{norm, ComplexMatrix, ComplexVector};

/// Largest supported vector length (`d ≤ 2^10`).
pub const MAX_VECTOR_LEN: usize = 20;

/// Input vectors must have norm 1 within this tolerance.
pub const UNIT_NORM_TOL: f64 = 1e-10;

/// A Hermitian operator with eigenvalues ±1.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    /// Wraps a matrix without checking it; see [`Observable::hermitian_defect`]
    /// and [`Observable::involution_defect`].
    pub fn from_matrix(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `max |M − M†|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.matrix.hermitian_defect()
    }

    /// `max |M² − I|`.
    pub fn involution_defect(&self) -> f64 {
        self.matrix
            .matmul(&self.matrix)
            .max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }
}

/// Observables for both parties plus the shared maximally entangled state.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumRealization {
    /// Local dimension `d = 2^⌈N/2⌉`.
    pub dim: usize,
    /// Length `N` of the realized vectors.
    pub vector_len: usize,
    /// Alice's observables.
    pub xs: Vec<Observable>,
    /// Bob's observables.
    pub ys: Vec<Observable>,
    /// `Σ_i |ii>/√d`, indexed `a·d + b`.
    pub psi: ComplexVector,
}

impl QuantumRealization {
    /// `<Ψ|X_s ⊗ Y_t|Ψ>` for every pair, Alice's settings as rows.
    pub fn correlations(&self) -> Result<Vec<Vec<f64>>> {
        self.xs
            .iter()
            .map(|x| {
                self.ys
                    .iter()
                    .map(|y| correlation(x, y, &self.psi))
                    .collect()
            })
            .collect()
    }
}

fn pauli(which: char) -> ComplexMatrix {
    let (re, im) = match which {
        'x' => (vec![0.0, 1.0, 1.0, 0.0], vec![0.0; 4]),
        'y' => (vec![0.0; 4], vec![0.0, -1.0, 1.0, 0.0]),
        'z' => (vec![1.0, 0.0, 0.0, -1.0], vec![0.0; 4]),
        _ => return ComplexMatrix::identity(2),
    };
    ComplexMatrix::from_parts(2, re, im).expect("2×2 literal")
}

/// `N` pairwise anticommuting Hermitian involutions of dimension
/// `2^⌈N/2⌉`: `C_{2j−1} = Z^{⊗(j−1)} ⊗ X ⊗ I^{⊗(q−j)}` and
/// `C_{2j} = Z^{⊗(j−1)} ⊗ Y ⊗ I^{⊗(q−j)}` with `q = ⌈N/2⌉`.
pub fn clifford_generators(n: usize) -> Result<Vec<Observable>> {
    if n == 0 {
        return Err(Error::InvalidSize(0));
    }
    if n > MAX_VECTOR_LEN {
        return Err(Error::TooLarge {
            what: "vector length",
            size: n,
            limit: MAX_VECTOR_LEN,
        });
    }
    let qubits = n.div_ceil(2);
    let (z, id) = (pauli('z'), pauli('i'));
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let j = k / 2;
        let middle = if k % 2 == 0 { pauli('x') } else { pauli('y') };
        let mut m = ComplexMatrix::identity(1);
        for slot in 0..qubits {
            let factor = match slot.cmp(&j) {
                core::cmp::Ordering::Less => &z,
                core::cmp::Ordering::Equal => &middle,
                core::cmp::Ordering::Greater => &id,
            };
            m = m.kron(factor);
        }
        out.push(Observable::from_matrix(m));
    }
    Ok(out)
}

/// Local dimension used for vectors of length `n`.
pub fn realization_dim(n: usize) -> usize {
    1 << n.div_ceil(2)
}

/// The maximally entangled state `Σ_i |ii>/√d`.
pub fn maximally_entangled(d: usize) -> ComplexVector {
    let mut re = vec![0.0; d * d];
    let amp = 1.0 / libm::sqrt(d as f64);
    for i in 0..d {
        re[i * d + i] = amp;
    }
    ComplexVector::from_real(re)
}

/// Builds ±1 observables whose correlations on the maximally entangled state
/// reproduce the inner products `x_s·y_t`.
pub fn realize(xs: &[Vec<f64>], ys: &[Vec<f64>]) -> Result<QuantumRealization> {
    let first = xs.first().or(ys.first()).ok_or(Error::EmptyInput)?;
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyInput);
    }
    let len = first.len();
    for (index, v) in xs.iter().chain(ys).enumerate() {
        if v.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: v.len(),
            });
        }
        let n = norm(v);
        if n.is_nan() || (n - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotUnitVector { index, norm: n });
        }
    }
    let gens = clifford_generators(len)?;
    let d = realization_dim(len);

    let combine = |v: &[f64]| {
        let mut m = ComplexMatrix::zeros(d);
        for (c, g) in v.iter().zip(&gens) {
            if *c != 0.0 {
                m.add_scaled(*c, g.matrix());
            }
        }
        m
    };
    let alice = xs
        .iter()
        .map(|x| Observable::from_matrix(combine(x)))
        .collect();
    let bob = ys
        .iter()
        .map(|y| Observable::from_matrix(combine(y).transpose()))
        .collect();

    Ok(QuantumRealization {
        dim: d,
        vector_len: len,
        xs: alice,
        ys: bob,
        psi: maximally_entangled(d),
    })
}

/// `<Ψ|X ⊗ Y|Ψ>` by direct contraction.
///
/// With `Ψ` reshaped into the `d×d` matrix `M[a][b] = ψ[a·d + b]`, the
/// action of `X ⊗ Y` is `X·M·Yᵀ`, so the `d²×d²` operator is never formed.
/// The imaginary part (zero for Hermitian `X`, `Y`) is discarded.
pub fn correlation(x: &Observable, y: &Observable, psi: &ComplexVector) -> Result<f64> {
    let d = x.dim();
    if y.dim() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: y.dim(),
        });
    }
    if psi.len() != d * d {
        return Err(Error::DimensionMismatch {
            left: d * d,
            right: psi.len(),
        });
    }
    let m = ComplexMatrix::from_parts(d, psi.re().to_vec(), psi.im().to_vec())?;
    let phi = x.matrix().matmul(&m).matmul(&y.matrix().transpose());
    let mut acc = 0.0;
    for k in 0..d * d {
        // Re(conj(ψ_k)·φ_k)
        acc += psi.re()[k] * phi.re()[k] + psi.im()[k] * phi.im()[k];
    }
    Ok(acc)
}

/// `Tr(X·Yᵀ)/d`, which equals `<Ψ|X ⊗ Y|Ψ>` for the maximally entangled
/// state of [`maximally_entangled`].
pub fn correlation_by_trace(x: &Observable, y: &Observable) -> Result<f64> {
    let d = x.dim();
    if y.dim() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: y.dim(),
        });
    }
    Ok(x.matrix().trace_product(&y.matrix().transpose()).re / d as f64)
}

/// `Σ c[s][t]·<Ψ|X_s ⊗ Y_t|Ψ>`.
pub fn inequality_value(ineq: &CorrelationInequality, r: &QuantumRealization) -> Result<f64> {
    ineq.check_counts(r.xs.len(), r.ys.len())?;
    let mut total = 0.0;
    for (s, x) in r.xs.iter().enumerate() {
        for (t, y) in r.ys.iter().enumerate() {
            let c = ineq.coefficient(s, t);
            if c != 0.0 {
                total += c * correlation(x, y, &r.psi)?;
            }
        }
    }
    Ok(total)
}
