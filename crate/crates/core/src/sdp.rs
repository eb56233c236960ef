//! The unit-diagonal semidefinite program
//!
//! ```text
//! maximize ½·Tr(G·W)   s.t.  G ⪰ 0,  G_ii = 1
//! minimize Σ λ_i        s.t.  diag(λ) − ½·W ⪰ 0      (dual)
//! ```
//!
//! The primal is solved in factorized form `G = VᵀV` by block-coordinate
//! ascent over the unit columns of `V`: with the others fixed, the best `v_i`
//! is `g_i/‖g_i‖` where `g_i = Σ_j W_ij v_j`. The factorized problem is not
//! convex, so the primal value alone proves nothing about optimality. Rigor
//! comes from the dual side: [`extract_dual`] reads `λ_i = ½‖g_i‖` off the
//! final vectors and [`certify`] turns any `λ` into a valid upper bound by
//! shifting it until `diag(λ) − ½·W` is positive semidefinite.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::classical::{lhv_bound, ClassicalBound};
use crate::error::{Error, Result};
use crate::inequality::{build_objective, CorrelationInequality, ObjectiveMatrix};
use crate::linalg::{dot, gram_from_vectors, min_eigenvalue, norm, SymMatrix};

/// Default sweep cap for [`solve_primal`].
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Default displacement tolerance for [`solve_primal`].
pub const DEFAULT_TOL: f64 = 1e-10;
/// Gap `d − p` at or below which a report counts as certified optimal.
pub const CERTIFIED_GAP: f64 = 1e-5;
/// A converged run whose gap exceeds this is treated as stuck at a saddle
/// and restarted once with a new seed and a larger rank.
pub const SADDLE_GAP: f64 = 1e-4;
/// [`solve`] fills in the classical bound when the smaller side has at most
/// this many settings.
pub const CLASSICAL_AUTO_LIMIT: usize = 20;

// ‖g_i‖ below this leaves v_i unchanged: every unit vector is optimal there.
const DEGENERATE_NORM: f64 = 1e-14;

/// Unit vectors found by coordinate ascent together with their Gram matrix
/// and objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalSolution {
    /// `n_alice + n_bob` unit vectors of length `rank`; Alice's first.
    pub vectors: Vec<Vec<f64>>,
    /// Gram matrix of `vectors`.
    pub gram: SymMatrix,
    /// `½·Tr(G·W)`.
    pub value: f64,
    /// Completed sweeps.
    pub iterations: usize,
    /// Largest single-vector displacement in the last sweep.
    pub residual: f64,
    /// Factorization rank (vector length).
    pub rank: usize,
    /// Seed used for the random start.
    pub seed: u64,
    /// Whether the displacement fell below the tolerance.
    pub converged: bool,
}

impl PrimalSolution {
    /// Alice's vectors.
    pub fn alice(&self, n_alice: usize) -> &[Vec<f64>] {
        &self.vectors[..n_alice]
    }

    /// Bob's vectors.
    pub fn bob(&self, n_alice: usize) -> &[Vec<f64>] {
        &self.vectors[n_alice..]
    }
}

/// A dual vector together with its feasibility margin and the upper bound
/// it certifies.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    /// The dual vector as supplied (before any shift).
    pub lambda: Vec<f64>,
    /// `μ = λ_min(diag(λ) − ½·W)`.
    pub feasibility_margin: f64,
    /// `Σ λ_i + m·max(0, −μ)`.
    pub certified_bound: f64,
}

impl DualCertificate {
    /// Uniform amount added to every `λ_i` to reach feasibility.
    pub fn shift(&self) -> f64 {
        (-self.feasibility_margin).max(0.0)
    }

    /// `λ + shift·1`, a feasible dual point.
    pub fn feasible_lambda(&self) -> Vec<f64> {
        let shift = self.shift();
        self.lambda.iter().map(|l| l + shift).collect()
    }
}

/// Tuning knobs for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Factorization rank; `None` means `n_alice + n_bob`.
    pub rank: Option<usize>,
    /// Seed for the random starting vectors.
    pub seed: u64,
    /// Sweep cap.
    pub max_iter: usize,
    /// Displacement tolerance.
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            rank: None,
            seed: 0,
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
        }
    }
}

/// One primal/dual attempt inside [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    /// Seed of the random start.
    pub seed: u64,
    /// Factorization rank.
    pub rank: usize,
    /// Completed sweeps.
    pub iterations: usize,
    /// Final displacement.
    pub residual: f64,
    /// Whether the ascent met its tolerance.
    pub converged: bool,
    /// Primal value reached.
    pub primal_value: f64,
    /// Certified dual bound.
    pub certified_bound: f64,
}

/// Result of the full pipeline for one inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Inequality name.
    pub name: String,
    /// Best primal solution (the attempt with the smallest gap).
    pub primal: PrimalSolution,
    /// Certificate for that attempt.
    pub dual: DualCertificate,
    /// `certified_bound − primal.value`.
    pub gap: f64,
    /// Exact classical bound, when cheap enough to enumerate.
    pub classical: Option<ClassicalBound>,
    /// Every attempt, in order.
    pub runs: Vec<RunSummary>,
}

impl BoundReport {
    /// Lower bound on the quantum maximum (the primal value).
    pub fn lower_bound(&self) -> f64 {
        self.primal.value
    }

    /// Certified upper bound on the quantum maximum.
    pub fn upper_bound(&self) -> f64 {
        self.dual.certified_bound
    }

    /// True when `gap ≤ CERTIFIED_GAP`.
    pub fn is_certified_optimal(&self) -> bool {
        self.gap <= CERTIFIED_GAP
    }
}

/// Block-coordinate ascent state over `m` unit vectors.
#[derive(Debug, Clone)]
pub struct CoordinateAscent<'a> {
    objective: &'a ObjectiveMatrix,
    vectors: Vec<Vec<f64>>,
    rank: usize,
    scratch: Vec<f64>,
}

impl<'a> CoordinateAscent<'a> {
    /// Starts from vectors drawn uniformly on the unit sphere of `R^rank`.
    pub fn new(objective: &'a ObjectiveMatrix, rank: usize, seed: u64) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors = (0..objective.dim())
            .map(|_| random_unit_vector(&mut rng, rank))
            .collect();
        Ok(Self {
            objective,
            vectors,
            rank,
            scratch: vec![0.0; rank],
        })
    }

    /// Starts from caller-supplied vectors, which are normalized.
    pub fn from_vectors(objective: &'a ObjectiveMatrix, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if vectors.len() != objective.dim() {
            return Err(Error::LengthMismatch {
                expected: objective.dim(),
                found: vectors.len(),
            });
        }
        let rank = vectors[0].len();
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        let mut normalized = Vec::with_capacity(vectors.len());
        for (index, mut v) in vectors.into_iter().enumerate() {
            if v.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    found: v.len(),
                });
            }
            let n = norm(&v);
            if !(n > 0.0 && n.is_finite()) {
                return Err(Error::NotUnitVector { index, norm: n });
            }
            v.iter_mut().for_each(|x| *x /= n);
            normalized.push(v);
        }
        Ok(Self {
            objective,
            vectors: normalized,
            rank,
            scratch: vec![0.0; rank],
        })
    }

    /// Updates every vector once in index order and returns the largest
    /// displacement `‖v_new − v_old‖`.
    pub fn sweep(&mut self) -> f64 {
        let w = self.objective.matrix();
        let mut max_disp: f64 = 0.0;
        for i in 0..self.vectors.len() {
            self.scratch.fill(0.0);
            for (j, v) in self.vectors.iter().enumerate() {
                let wij = w.get(i, j);
                if wij != 0.0 {
                    for (g, x) in self.scratch.iter_mut().zip(v) {
                        *g += wij * x;
                    }
                }
            }
            let gn = norm(&self.scratch);
            if gn < DEGENERATE_NORM {
                continue;
            }
            let mut disp = 0.0;
            for (x, g) in self.vectors[i].iter_mut().zip(&self.scratch) {
                let new = g / gn;
                disp += (new - *x) * (new - *x);
                *x = new;
            }
            max_disp = max_disp.max(libm::sqrt(disp));
        }
        max_disp
    }

    /// Current objective `½ Σ_ij W_ij v_i·v_j`.
    pub fn value(&self) -> f64 {
        objective_value(self.objective, &self.vectors)
    }

    /// Current vectors.
    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Factorization rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    fn into_solution(
        self,
        seed: u64,
        iterations: usize,
        residual: f64,
        converged: bool,
    ) -> PrimalSolution {
        let value = self.value();
        let gram = gram_from_vectors(&self.vectors).expect("ascent keeps equal-length vectors");
        PrimalSolution {
            vectors: self.vectors,
            gram,
            value,
            iterations,
            residual,
            rank: self.rank,
            seed,
            converged,
        }
    }
}

fn random_unit_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| StandardNormal.sample(rng)).collect();
        let n = norm(&v);
        if n > 1e-8 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// `½ Σ_ij W_ij v_i·v_j` for the given vectors.
pub fn objective_value(objective: &ObjectiveMatrix, vectors: &[Vec<f64>]) -> f64 {
    let w = objective.matrix();
    let mut total = 0.0;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            let wij = w.get(i, j);
            if wij != 0.0 {
                total += wij * dot(&vectors[i], &vectors[j]);
            }
        }
    }
    total
}

/// Runs coordinate ascent from a seeded random start until the largest
/// per-sweep displacement drops below `tol` or `max_iter` sweeps have run.
///
/// Hitting the sweep cap yields [`Error::MaxIterReached`] carrying the
/// partial solution; it can still be certified.
pub fn solve_primal(
    objective: &ObjectiveMatrix,
    rank: usize,
    seed: u64,
    max_iter: usize,
    tol: f64,
) -> Result<PrimalSolution> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut ascent = CoordinateAscent::new(objective, rank, seed)?;
    let mut residual = f64::INFINITY;
    for sweep in 1..=max_iter {
        residual = ascent.sweep();
        if residual < tol {
            return Ok(ascent.into_solution(seed, sweep, residual, true));
        }
    }
    Err(Error::MaxIterReached {
        partial: Box::new(ascent.into_solution(seed, max_iter, residual, false)),
    })
}

/// Dual estimate `λ_i = ½‖Σ_j W_ij v_j‖`.
///
/// At a fixed point of the ascent, `Σ λ_i` equals the primal value.
pub fn extract_dual(objective: &ObjectiveMatrix, vectors: &[Vec<f64>]) -> Vec<f64> {
    let w = objective.matrix();
    let len = vectors.first().map_or(0, Vec::len);
    let mut g = vec![0.0; len];
    (0..objective.dim())
        .map(|i| {
            g.fill(0.0);
            for (j, v) in vectors.iter().enumerate() {
                let wij = w.get(i, j);
                if wij != 0.0 {
                    for (a, x) in g.iter_mut().zip(v) {
                        *a += wij * x;
                    }
                }
            }
            0.5 * norm(&g)
        })
        .collect()
}

/// Certifies an upper bound from an arbitrary dual vector.
///
/// Computes `μ = λ_min(diag(λ) − ½·W)`. When `μ < 0` the vector is shifted
/// uniformly by `−μ`, which makes the constraint matrix PSD and costs
/// `m·(−μ)` in the objective.
pub fn certify(objective: &ObjectiveMatrix, lambda: &[f64]) -> Result<DualCertificate> {
    let m = objective.dim();
    if lambda.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: lambda.len(),
        });
    }
    if let Some(row) = lambda.iter().position(|l| !l.is_finite()) {
        return Err(Error::NonFiniteEntry { row, col: 0 });
    }
    let constraint = SymMatrix::from_diagonal(lambda).combine(1.0, objective.matrix(), -0.5);
    let mu = min_eigenvalue(&constraint)?;
    let certified_bound = lambda.iter().sum::<f64>() + m as f64 * (-mu).max(0.0);
    Ok(DualCertificate {
        lambda: lambda.to_vec(),
        feasibility_margin: mu,
        certified_bound,
    })
}

struct Attempt {
    primal: PrimalSolution,
    dual: DualCertificate,
}

impl Attempt {
    fn gap(&self) -> f64 {
        self.dual.certified_bound - self.primal.value
    }

    fn summary(&self) -> RunSummary {
        RunSummary {
            seed: self.primal.seed,
            rank: self.primal.rank,
            iterations: self.primal.iterations,
            residual: self.primal.residual,
            converged: self.primal.converged,
            primal_value: self.primal.value,
            certified_bound: self.dual.certified_bound,
        }
    }
}

fn attempt(
    objective: &ObjectiveMatrix,
    rank: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<Attempt> {
    let primal = match solve_primal(objective, rank, seed, opts.max_iter, opts.tol) {
        Ok(p) => p,
        Err(Error::MaxIterReached { partial }) => *partial,
        Err(e) => return Err(e),
    };
    let lambda = extract_dual(objective, &primal.vectors);
    let dual = certify(objective, &lambda)?;
    Ok(Attempt { primal, dual })
}

/// Full pipeline: objective, ascent, dual extraction, certification.
///
/// A converged run with gap above [`SADDLE_GAP`] is retried once with
/// `seed + 1` and `rank + 2`; the attempt with the smaller gap is reported
/// and both appear in [`BoundReport::runs`].
pub fn solve(ineq: &CorrelationInequality, opts: &SolveOptions) -> Result<BoundReport> {
    let objective = build_objective(ineq);
    let rank = opts.rank.unwrap_or(objective.dim());
    let first = attempt(&objective, rank, opts.seed, opts)?;
    let mut runs = vec![first.summary()];
    let mut best = first;
    if best.primal.converged && best.gap() > SADDLE_GAP {
        let second = attempt(&objective, rank + 2, opts.seed.wrapping_add(1), opts)?;
        runs.push(second.summary());
        if second.gap() < best.gap() {
            best = second;
        }
    }
    let classical = if ineq.n_alice().min(ineq.n_bob()) <= CLASSICAL_AUTO_LIMIT {
        Some(lhv_bound(ineq)?)
    } else {
        None
    };
    Ok(BoundReport {
        name: ineq.name().into(),
        gap: best.gap(),
        primal: best.primal,
        dual: best.dual,
        classical,
        runs,
    })
}
