//! Test-only oracles, independent of the solver code paths.
#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsirelson_core::CorrelationInequality;

pub const GRID_STEP: f64 = 1e-3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random unit vector via Gaussian sampling.
pub fn random_unit(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len)
            .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Coefficient matrix with entries drawn from {−1, 0, 1}.
pub fn random_sign_inequality(
    rng: &mut impl Rng,
    n_alice: usize,
    n_bob: usize,
) -> CorrelationInequality {
    let c = (0..n_alice * n_bob)
        .map(|_| rng.random_range(-1i32..=1) as f64)
        .collect();
    CorrelationInequality::from_row_major("random", n_alice, n_bob, c).unwrap()
}

/// Rank-2 brute-force maximum of `Σ c[s][t] x_s·y_t` over planar unit vectors.
///
/// The side with fewer settings is parameterized by angles (the first fixed
/// at 0 by rotation invariance) and searched on a grid of step
/// [`GRID_STEP`], then refined by a shrinking-step pattern search. The other
/// side answers optimally in closed form: `y_t ∝ Σ_s c[s][t] x_s`, worth
/// `‖Σ_s c[s][t] x_s‖`. The result is a lower bound on the quantum maximum,
/// exact whenever one side has at most two settings.
pub fn rank2_oracle(ineq: &CorrelationInequality) -> f64 {
    let alice = ineq.n_alice() <= ineq.n_bob();
    let (k, l) = if alice {
        (ineq.n_alice(), ineq.n_bob())
    } else {
        (ineq.n_bob(), ineq.n_alice())
    };
    let coef: Vec<f64> = (0..k * l)
        .map(|i| {
            let (e, r) = (i / l, i % l);
            if alice {
                ineq.coefficient(e, r)
            } else {
                ineq.coefficient(r, e)
            }
        })
        .collect();
    let value = |cs: &[(f64, f64)]| -> f64 {
        (0..l)
            .map(|r| {
                let (mut a, mut b) = (0.0, 0.0);
                for (e, &(c, s)) in cs.iter().enumerate() {
                    a += coef[e * l + r] * c;
                    b += coef[e * l + r] * s;
                }
                (a * a + b * b).sqrt()
            })
            .sum()
    };
    let eval_angles = |angles: &[f64]| -> f64 {
        let cs: Vec<(f64, f64)> = std::iter::once((1.0, 0.0))
            .chain(angles.iter().map(|a| (a.cos(), a.sin())))
            .collect();
        value(&cs)
    };
    if k == 1 {
        return eval_angles(&[]);
    }
    let free = k - 1;
    assert!(
        free <= 2,
        "oracle limited to three settings on the smaller side"
    );

    let steps = (TAU / GRID_STEP).ceil() as usize;
    let table: Vec<(f64, f64)> = (0..steps)
        .map(|i| {
            let a = i as f64 * GRID_STEP;
            (a.cos(), a.sin())
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, vec![0.0; free]);
    let mut cs = vec![(1.0, 0.0); k];
    if free == 1 {
        for (i, &p) in table.iter().enumerate() {
            cs[1] = p;
            let v = value(&cs);
            if v > best.0 {
                best = (v, vec![i as f64 * GRID_STEP]);
            }
        }
    } else {
        for (i, &p) in table.iter().enumerate() {
            cs[1] = p;
            for (j, &q) in table.iter().enumerate() {
                cs[2] = q;
                let v = value(&cs);
                if v > best.0 {
                    best = (v, vec![i as f64 * GRID_STEP, j as f64 * GRID_STEP]);
                }
            }
        }
    }

    let (mut val, mut angles) = best;
    let mut step = GRID_STEP;
    while step > 1e-13 {
        let mut improved = false;
        for d in 0..free {
            for dir in [1.0, -1.0] {
                let mut trial = angles.clone();
                trial[d] += dir * step;
                let v = eval_angles(&trial);
                if v > val {
                    val = v;
                    angles = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    val
}

/// All `2^(rows·cols)` matrices with entries ±1.
pub fn all_sign_matrices(rows: usize, cols: usize) -> Vec<CorrelationInequality> {
    let cells = rows * cols;
    (0..1u32 << cells)
        .map(|mask| {
            let c = (0..cells)
                .map(|b| if mask >> b & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            CorrelationInequality::from_row_major(format!("signs-{mask}"), rows, cols, c).unwrap()
        })
        .collect()
}
