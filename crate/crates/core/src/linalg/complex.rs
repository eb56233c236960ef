use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex square matrix stored as separate row-major real and
/// imaginary planes.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl ComplexMatrix {
    /// Zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            re: vec![0.0; dim * dim],
            im: vec![0.0; dim * dim],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.re[i * dim + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from real and imaginary row-major planes.
    pub fn from_parts(dim: usize, re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        for plane in [&re, &im] {
            if plane.len() != dim * dim {
                return Err(Error::LengthMismatch {
                    expected: dim * dim,
                    found: plane.len(),
                });
            }
        }
        Ok(Self { dim, re, im })
    }

    /// Matrix order.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let k = i * self.dim + j;
        Complex64::new(self.re[k], self.im[k])
    }

    /// Real plane, row-major.
    pub fn re(&self) -> &[f64] {
        &self.re
    }

    /// Imaginary plane, row-major.
    pub fn im(&self) -> &[f64] {
        &self.im
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut out = ComplexMatrix::zeros(dim);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let p = a * other.get(k, l);
                        let idx = (i * m + k) * dim + (j * m + l);
                        out.re[idx] = p.re;
                        out.im[idx] = p.im;
                    }
                }
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "matmul: dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let (ar, ai) = (self.re[i * n + k], self.im[i * n + k]);
                if ar == 0.0 && ai == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let (br, bi) = (other.re[k * n + j], other.im[k * n + j]);
                    out.re[i * n + j] += ar * br - ai * bi;
                    out.im[i * n + j] += ar * bi + ai * br;
                }
            }
        }
        out
    }

    /// `self += alpha · other` for real `alpha`.
    pub fn add_scaled(&mut self, alpha: f64, other: &ComplexMatrix) {
        assert_eq!(self.dim, other.dim, "add_scaled: dimension mismatch");
        for (a, b) in self.re.iter_mut().zip(&other.re) {
            *a += alpha * b;
        }
        for (a, b) in self.im.iter_mut().zip(&other.im) {
            *a += alpha * b;
        }
    }

    /// Entrywise transpose (no conjugation).
    pub fn transpose(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.re[j * n + i] = self.re[i * n + j];
                out.im[j * n + i] = self.im[i * n + j];
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = self.transpose();
        for x in out.im.iter_mut() {
            *x = -*x;
        }
        out
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.dim, other.dim, "trace_product: dimension mismatch");
        let n = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        acc
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        (0..self.dim * self.dim)
            .map(|k| libm::hypot(self.re[k] - other.re[k], self.im[k] - other.im[k]))
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(
            self.re.iter().map(|x| x * x).sum::<f64>() + self.im.iter().map(|x| x * x).sum::<f64>(),
        )
    }
}

/// Complex vector stored as separate real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl ComplexVector {
    /// Builds a vector from its real and imaginary parts.
    pub fn from_parts(re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::LengthMismatch {
                expected: re.len(),
                found: im.len(),
            });
        }
        Ok(Self { re, im })
    }

    /// Real vector.
    pub fn from_real(re: Vec<f64>) -> Self {
        let im = vec![0.0; re.len()];
        Self { re, im }
    }

    /// Length.
    pub fn len(&self) -> usize {
        self.re.len()
    }

    /// True when the vector has no components.
    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    /// Component `i`.
    #[inline]
    pub fn get(&self, i: usize) -> Complex64 {
        Complex64::new(self.re[i], self.im[i])
    }

    /// Real part.
    pub fn re(&self) -> &[f64] {
        &self.re
    }

    /// Imaginary part.
    pub fn im(&self) -> &[f64] {
        &self.im
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        libm::sqrt(
            self.re.iter().map(|x| x * x).sum::<f64>() + self.im.iter().map(|x| x * x).sum::<f64>(),
        )
    }
}
