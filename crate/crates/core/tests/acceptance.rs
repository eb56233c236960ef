//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::f64::consts::{PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tsirelson_core::analytic::{chained_a_spectrum, chained_dual_lambda, chained_primal_vectors};
use tsirelson_core::classical::lhv_bound;
use tsirelson_core::linalg::{dot, min_eigenvalue, sym_eigen, SymMatrix};
use tsirelson_core::realization::{correlation, inequality_value, realize};
use tsirelson_core::{build_objective, solve, CorrelationInequality, SolveOptions};

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn chained_bound(n: usize) -> f64 {
    2.0 * n as f64 * (PI / (2 * n) as f64).cos()
}

fn ac1_chsh_optimum() -> Outcome {
    let r = solve(
        &CorrelationInequality::chained(2).unwrap(),
        &SolveOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let target = 2.0 * SQRT_2;
    let (p, d) = (r.primal.value, r.dual.certified_bound);
    ensure(
        (p - target).abs() <= 1e-6 && (d - target).abs() <= 1e-6,
        || format!("primal {p}, dual {d}, expected {target}"),
    )?;
    Ok(format!("primal {p:.12}, dual {d:.12}"))
}

fn ac2_chained_family() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let r = solve(
            &CorrelationInequality::chained(n).unwrap(),
            &SolveOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        let q = chained_bound(n);
        let (ep, ed) = (
            (r.primal.value - q).abs(),
            (r.dual.certified_bound - q).abs(),
        );
        ensure(ep <= 1e-6 && ed <= 1e-6, || {
            format!("n={n}: |p-q|={ep:e}, |d-q|={ed:e}")
        })?;
        worst = worst.max(ep).max(ed);
    }
    Ok(format!("max deviation {worst:.2e} over n=2..10"))
}

fn ac3_classical_bounds() -> Outcome {
    for n in 2..=10 {
        let ineq = CorrelationInequality::chained(n).unwrap();
        ensure(ineq.is_integral(), || {
            format!("n={n}: coefficients not integral")
        })?;
        let b = lhv_bound(&ineq).map_err(|e| e.to_string())?;
        ensure(b.value == (2 * n - 2) as f64, || {
            format!("n={n}: got {}, expected {}", b.value, 2 * n - 2)
        })?;
    }
    Ok("lhv = 2n-2 exactly for n=2..10".into())
}

fn ac4_spectrum_claims() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let w = build_objective(&CorrelationInequality::chained(n).unwrap());
        let numeric = sym_eigen(w.matrix()).map_err(|e| e.to_string())?;
        let mut expected: Vec<f64> = (0..n)
            .flat_map(|s| {
                let sigma = (2.0 + 2.0 * (PI * (2 * s + 1) as f64 / n as f64).cos())
                    .max(0.0)
                    .sqrt();
                [sigma, -sigma]
            })
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in numeric.eigenvalues().iter().zip(&expected) {
            worst = worst.max((a - b).abs());
        }
        let max_expected = 2.0 * (PI / (2 * n) as f64).cos();
        worst = worst.max((numeric.max() - max_expected).abs());
        let closed = chained_a_spectrum(n).map_err(|e| e.to_string())?;
        worst = worst.max((closed.w_max - max_expected).abs());
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.2e}"))
}

fn ac5_dual_feasibility() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let w = build_objective(&CorrelationInequality::chained(n).unwrap());
        let lambda = chained_dual_lambda(n).unwrap();
        let constraint = SymMatrix::from_diagonal(&lambda).combine(1.0, w.matrix(), -0.5);
        let mu = min_eigenvalue(&constraint).map_err(|e| e.to_string())?;
        ensure((-1e-9..=1e-9).contains(&mu), || {
            format!("n={n}: min eigenvalue {mu:e}")
        })?;
        worst = worst.max(mu.abs());
    }
    Ok(format!("max |min eigenvalue| {worst:.2e}"))
}

fn ac6_theorem_identity() -> Outcome {
    let mut rng = common::rng(2024);
    let mut worst: f64 = 0.0;
    for family in 0..100 {
        let len = 1 + family % 8;
        let na = 1 + (family / 8) % 4;
        let nb = 1 + (family / 32) % 4;
        let xs: Vec<Vec<f64>> = (0..na)
            .map(|_| common::random_unit(&mut rng, len))
            .collect();
        let ys: Vec<Vec<f64>> = (0..nb)
            .map(|_| common::random_unit(&mut rng, len))
            .collect();
        let r = realize(&xs, &ys).map_err(|e| e.to_string())?;
        for (s, x) in xs.iter().enumerate() {
            for (t, y) in ys.iter().enumerate() {
                let c = correlation(&r.xs[s], &r.ys[t], &r.psi).map_err(|e| e.to_string())?;
                worst = worst.max((c - dot(x, y)).abs());
            }
        }
    }
    ensure(worst <= 1e-10, || format!("max error {worst:e}"))?;
    Ok(format!("100 families, max error {worst:.2e}"))
}

fn ac7_end_to_end_tightness() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        let ineq = CorrelationInequality::chained(n).unwrap();
        let (xs, ys) = chained_primal_vectors(n).unwrap();
        let planar = |v: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            v.into_iter().map(|x| x[..2].to_vec()).collect()
        };
        let r = realize(&planar(xs), &planar(ys)).map_err(|e| e.to_string())?;
        let achieved = inequality_value(&ineq, &r).map_err(|e| e.to_string())?;
        let certified = solve(&ineq, &SolveOptions::default())
            .map_err(|e| e.to_string())?
            .dual
            .certified_bound;
        let dev = (achieved - certified).abs();
        ensure(dev <= 1e-8, || {
            format!("n={n}: achieved {achieved}, certified {certified}")
        })?;
        worst = worst.max(dev);
    }
    Ok(format!("max |achieved - certified| {worst:.2e}"))
}

fn ac8_weak_duality_suite() -> Outcome {
    let mut rng = common::rng(8);
    let mut min_slack = f64::INFINITY;
    for i in 0..200 {
        let na = 1 + i % 5;
        let nb = 1 + (i / 5) % 5;
        let ineq = common::random_sign_inequality(&mut rng, na, nb);
        let opts = SolveOptions {
            seed: i as u64,
            ..SolveOptions::default()
        };
        let r = solve(&ineq, &opts).map_err(|e| e.to_string())?;
        let lhv = lhv_bound(&ineq).map_err(|e| e.to_string())?.value;
        let (p, d) = (r.primal.value, r.dual.certified_bound);
        ensure(d >= p - 1e-8, || format!("case {i}: dual {d} < primal {p}"))?;
        ensure(p >= lhv - 1e-8 && d >= lhv - 1e-8, || {
            format!("case {i}: lhv {lhv} exceeds primal {p} or dual {d}")
        })?;
        min_slack = min_slack.min(d - p);
    }
    Ok(format!(
        "200 instances, min (dual - primal) {min_slack:.2e}"
    ))
}

fn ac9_oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for ineq in common::all_sign_matrices(2, 2) {
        let oracle = common::rank2_oracle(&ineq);
        let r = solve(&ineq, &SolveOptions::default()).map_err(|e| e.to_string())?;
        let dev = (r.dual.certified_bound - oracle).abs();
        ensure(dev <= 1e-4, || {
            format!(
                "{}: certified {}, oracle {oracle}",
                ineq.name(),
                r.dual.certified_bound
            )
        })?;
        worst = worst.max(dev);
    }
    Ok(format!("16 sign matrices, max deviation {worst:.2e}"))
}

fn ac10_gisin() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=6 {
        let r = solve(
            &CorrelationInequality::gisin(n).unwrap(),
            &SolveOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        ensure(r.gap <= 1e-5, || format!("n={n}: gap {:e}", r.gap))?;
        parts.push(format!("n={n}: {:.6}", r.dual.certified_bound));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: "AC1",
            title: "CHSH optimum 2√2",
            limit: Some(Duration::from_secs(1)),
            check: ac1_chsh_optimum,
        },
        Criterion {
            id: "AC2",
            title: "chained family 2n·cos(π/2n)",
            limit: Some(Duration::from_secs(10)),
            check: ac2_chained_family,
        },
        Criterion {
            id: "AC3",
            title: "classical bounds 2n-2",
            limit: Some(Duration::from_secs(1)),
            check: ac3_classical_bounds,
        },
        Criterion {
            id: "AC4",
            title: "spectrum of W",
            limit: Some(Duration::from_secs(5)),
            check: ac4_spectrum_claims,
        },
        Criterion {
            id: "AC5",
            title: "closed-form dual feasibility",
            limit: None,
            check: ac5_dual_feasibility,
        },
        Criterion {
            id: "AC6",
            title: "vector-to-observable identity",
            limit: Some(Duration::from_secs(30)),
            check: ac6_theorem_identity,
        },
        Criterion {
            id: "AC7",
            title: "end-to-end tightness",
            limit: None,
            check: ac7_end_to_end_tightness,
        },
        Criterion {
            id: "AC8",
            title: "weak duality suite",
            limit: Some(Duration::from_secs(60)),
            check: ac8_weak_duality_suite,
        },
        Criterion {
            id: "AC9",
            title: "rank-2 oracle equivalence",
            limit: None,
            check: ac9_oracle_equivalence,
        },
        Criterion {
            id: "AC10",
            title: "Gisin certified gap",
            limit: None,
            check: ac10_gisin,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("runtime {elapsed:?} exceeds {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} {}: {} ({:.3?})", c.id, c.title, detail, elapsed),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {} {}: {} ({:.3?})", c.id, c.title, why, elapsed);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
