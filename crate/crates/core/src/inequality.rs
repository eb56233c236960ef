//! Correlation inequalities and the bipartite objective matrix `W`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, SymMatrix};

/// A two-party correlation Bell expression `Σ_{s,t} c[s][t]·<X_s Y_t>`.
///
/// Alice's settings index the rows, Bob's the columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationInequality {
    name: String,
    n_alice: usize,
    n_bob: usize,
    coefficients: Vec<f64>,
}

impl CorrelationInequality {
    /// Builds an inequality from a list of coefficient rows (one per Alice
    /// setting). Coefficients are stored exactly as given.
    pub fn new(name: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let n_bob = rows.first().map_or(0, Vec::len);
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_bob) {
            return Err(Error::RaggedMatrix {
                row,
                expected: n_bob,
                found: r.len(),
            });
        }
        let data = rows.iter().flatten().copied().collect();
        Self::from_row_major(name, rows.len(), n_bob, data)
    }

    /// Builds an inequality from row-major coefficients of shape `n_alice × n_bob`.
    pub fn from_row_major(
        name: impl Into<String>,
        n_alice: usize,
        n_bob: usize,
        coefficients: Vec<f64>,
    ) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        if n_alice == 0 || n_bob == 0 {
            return Err(Error::EmptyMatrix);
        }
        if coefficients.len() != n_alice * n_bob {
            return Err(Error::LengthMismatch {
                expected: n_alice * n_bob,
                found: coefficients.len(),
            });
        }
        if let Some(k) = coefficients.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteEntry {
                row: k / n_bob,
                col: k % n_bob,
            });
        }
        Ok(Self {
            name,
            n_alice,
            n_bob,
            coefficients,
        })
    }

    /// The chained CHSH expression with `n` settings per side:
    /// `Σ_i <X_i Y_i> + Σ_{i<n} <X_{i+1} Y_i> − <X_1 Y_n>`.
    ///
    /// For `n = 1` the two terms on `<X_1 Y_1>` cancel and the result is the
    /// zero inequality.
    pub fn chained(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        let mut c = alloc::vec![0.0; n * n];
        for i in 0..n {
            c[i * n + i] += 1.0;
        }
        for i in 0..n - 1 {
            c[(i + 1) * n + i] += 1.0;
        }
        c[n - 1] -= 1.0;
        Self::from_row_major(alloc::format!("chained-{n}"), n, n, c)
    }

    /// The CHSH expression `<X_1Y_1> + <X_1Y_2> + <X_2Y_1> − <X_2Y_2>`.
    pub fn chsh() -> Self {
        Self::from_row_major("chsh", 2, 2, alloc::vec![1.0, 1.0, 1.0, -1.0])
            .expect("CHSH coefficients are valid")
    }

    /// Gisin's family: `c[s][t] = +1` when `s + t ≤ n + 1` (1-based), else `−1`.
    pub fn gisin(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        let c = (0..n * n)
            .map(|k| {
                let (s, t) = (k / n + 1, k % n + 1);
                if s + t <= n + 1 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        Self::from_row_major(alloc::format!("gisin-{n}"), n, n, c)
    }

    /// Name of the inequality.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of Alice's settings.
    pub fn n_alice(&self) -> usize {
        self.n_alice
    }

    /// Number of Bob's settings.
    pub fn n_bob(&self) -> usize {
        self.n_bob
    }

    /// Total number of settings `n_alice + n_bob`.
    pub fn n_settings(&self) -> usize {
        self.n_alice + self.n_bob
    }

    /// Coefficient on `<X_s Y_t>` (0-based).
    #[inline]
    pub fn coefficient(&self, s: usize, t: usize) -> f64 {
        self.coefficients[s * self.n_bob + t]
    }

    /// Row-major coefficients.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Coefficients as a list of rows.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.coefficients
            .chunks(self.n_bob)
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// True when every coefficient is an integer small enough for exact
    /// `i64` accumulation.
    pub fn is_integral(&self) -> bool {
        self.coefficients
            .iter()
            .all(|&c| libm::trunc(c) == c && c.abs() <= (1u64 << 31) as f64)
    }

    /// The same inequality with every coefficient negated.
    pub fn negated(&self) -> Self {
        Self {
            name: alloc::format!("-{}", self.name),
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    /// `Σ_{s,t} c[s][t] (x_s · y_t)` for real vectors.
    pub fn evaluate(&self, xs: &[Vec<f64>], ys: &[Vec<f64>]) -> Result<f64> {
        self.check_counts(xs.len(), ys.len())?;
        let mut total = 0.0;
        for (s, x) in xs.iter().enumerate() {
            for (t, y) in ys.iter().enumerate() {
                let c = self.coefficient(s, t);
                if c != 0.0 {
                    if x.len() != y.len() {
                        return Err(Error::LengthMismatch {
                            expected: x.len(),
                            found: y.len(),
                        });
                    }
                    total += c * dot(x, y);
                }
            }
        }
        Ok(total)
    }

    pub(crate) fn check_counts(&self, n_alice: usize, n_bob: usize) -> Result<()> {
        if (n_alice, n_bob) != (self.n_alice, self.n_bob) {
            return Err(Error::SettingCountMismatch {
                expected: (self.n_alice, self.n_bob),
                found: (n_alice, n_bob),
            });
        }
        Ok(())
    }
}

/// The symmetric matrix `W = [[0, Aᵀ], [A, 0]]` with `A[t][s] = c[s][t]`.
///
/// Indices `0..n_alice` are Alice's vectors, `n_alice..n_alice + n_bob` are
/// Bob's, so that `½·Tr(G·W) = Σ c[s][t] x_s·y_t` for any Gram matrix `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveMatrix {
    matrix: SymMatrix,
    n_alice: usize,
    n_bob: usize,
}

impl ObjectiveMatrix {
    /// The full `(n_alice + n_bob)`-order matrix.
    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    /// Order of `W`.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Number of Alice's settings.
    pub fn n_alice(&self) -> usize {
        self.n_alice
    }

    /// Number of Bob's settings.
    pub fn n_bob(&self) -> usize {
        self.n_bob
    }

    /// `½·Tr(G·W)`.
    pub fn half_trace(&self, g: &SymMatrix) -> f64 {
        0.5 * self.matrix.trace_product(g)
    }
}

/// Assembles the objective matrix of `ineq`.
pub fn build_objective(ineq: &CorrelationInequality) -> ObjectiveMatrix {
    let (na, nb) = (ineq.n_alice(), ineq.n_bob());
    let matrix = SymMatrix::from_fn(na + nb, |i, j| {
        if i < na && j >= na {
            ineq.coefficient(i, j - na)
        } else if i >= na && j < na {
            ineq.coefficient(j, i - na)
        } else {
            0.0
        }
    });
    ObjectiveMatrix {
        matrix,
        n_alice: na,
        n_bob: nb,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn chsh_from_rows() {
        let ineq = CorrelationInequality::new("chsh", &[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        assert_eq!((ineq.n_alice(), ineq.n_bob()), (2, 2));
        assert_eq!(ineq, CorrelationInequality::chsh());
    }

    #[test]
    fn single_and_rectangular_shapes() {
        let one = CorrelationInequality::new("one", &[vec![1.0]]).unwrap();
        assert_eq!((one.n_alice(), one.n_bob()), (1, 1));
        let rect = CorrelationInequality::new("rect", &[vec![1.0, 0.0, 1.0]]).unwrap();
        assert_eq!((rect.n_alice(), rect.n_bob()), (1, 3));
        assert_eq!(rect.coefficients(), &[1.0, 0.0, 1.0]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            CorrelationInequality::new("e", &[]),
            Err(Error::EmptyMatrix)
        ));
        assert!(matches!(
            CorrelationInequality::new("e", &[vec![]]),
            Err(Error::EmptyMatrix)
        ));
        assert!(matches!(
            CorrelationInequality::new("", &[vec![1.0]]),
            Err(Error::EmptyName)
        ));
        assert!(matches!(
            CorrelationInequality::new("nan", &[vec![1.0, 2.0], vec![f64::NAN, 0.0]]),
            Err(Error::NonFiniteEntry { row: 1, col: 0 })
        ));
        assert!(matches!(
            CorrelationInequality::new("inf", &[vec![f64::INFINITY]]),
            Err(Error::NonFiniteEntry { row: 0, col: 0 })
        ));
        assert!(matches!(
            CorrelationInequality::new("ragged", &[vec![1.0, 2.0], vec![1.0]]),
            Err(Error::RaggedMatrix { row: 1, .. })
        ));
    }

    #[test]
    fn chained_small_cases() {
        assert_eq!(
            CorrelationInequality::chained(2).unwrap().rows(),
            vec![vec![1.0, -1.0], vec![1.0, 1.0]]
        );
        assert_eq!(
            CorrelationInequality::chained(1).unwrap().rows(),
            vec![vec![0.0]]
        );
        assert!(matches!(
            CorrelationInequality::chained(0),
            Err(Error::InvalidSize(0))
        ));
    }

    #[test]
    fn chained_four_expands_the_sum() {
        // Expand Σ<X_iY_i> + Σ<X_{i+1}Y_i> − <X_1Y_4> term by term.
        let n = 4;
        let mut expected = vec![vec![0.0; n]; n];
        for (i, row) in expected.iter_mut().enumerate() {
            row[i] += 1.0;
        }
        for i in 0..n - 1 {
            expected[i + 1][i] += 1.0;
        }
        expected[0][n - 1] -= 1.0;
        assert_eq!(
            expected,
            vec![
                vec![1.0, 0.0, 0.0, -1.0],
                vec![1.0, 1.0, 0.0, 0.0],
                vec![0.0, 1.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0, 1.0],
            ]
        );
        assert_eq!(CorrelationInequality::chained(n).unwrap().rows(), expected);
    }

    #[test]
    fn chained_nonzero_count() {
        for n in 2..=12 {
            let ineq = CorrelationInequality::chained(n).unwrap();
            let nz: Vec<_> = ineq.coefficients().iter().filter(|&&c| c != 0.0).collect();
            assert_eq!(nz.len(), 2 * n);
            assert!(nz.iter().all(|c| c.abs() == 1.0));
        }
    }

    #[test]
    fn gisin_small_cases() {
        assert_eq!(
            CorrelationInequality::gisin(2).unwrap().rows(),
            CorrelationInequality::chsh().rows()
        );
        assert_eq!(
            CorrelationInequality::gisin(1).unwrap().rows(),
            vec![vec![1.0]]
        );
        assert_eq!(
            CorrelationInequality::gisin(3).unwrap().rows(),
            vec![
                vec![1.0, 1.0, 1.0],
                vec![1.0, 1.0, -1.0],
                vec![1.0, -1.0, -1.0]
            ]
        );
        assert!(CorrelationInequality::gisin(0).is_err());
    }

    #[test]
    fn objective_of_single_setting() {
        let w = build_objective(&CorrelationInequality::new("one", &[vec![1.0]]).unwrap());
        assert_eq!(w.matrix().to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn objective_blocks() {
        let ineq = CorrelationInequality::chained(2).unwrap();
        let w = build_objective(&ineq);
        let m = w.matrix();
        // Alice-row / Bob-column block holds c, Bob-row / Alice-column holds cᵀ.
        assert_eq!(m.get(0, 3), -1.0);
        assert_eq!(m.get(3, 0), -1.0);
        assert_eq!(m.get(1, 2), 1.0);
        for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2), (0, 0), (3, 3)] {
            assert_eq!(m.get(i, j), 0.0);
        }
    }

    #[test]
    fn chsh_objective_is_the_textbook_w() {
        let w = build_objective(&CorrelationInequality::chsh());
        assert_eq!(
            w.matrix().to_rows(),
            vec![
                vec![0.0, 0.0, 1.0, 1.0],
                vec![0.0, 0.0, 1.0, -1.0],
                vec![1.0, 1.0, 0.0, 0.0],
                vec![1.0, -1.0, 0.0, 0.0],
            ]
        );
    }

    #[test]
    fn evaluate_checks_counts() {
        let ineq = CorrelationInequality::chsh();
        let e = vec![vec![1.0, 0.0]];
        assert!(matches!(
            ineq.evaluate(&e, &e),
            Err(Error::SettingCountMismatch { .. })
        ));
    }
}
