use std::f64::consts::SQRT_2;
use std::thread;

use serde_json::{json, Value};
use tsirelson_core::analytic::{
    chained_a_spectrum, chained_classical_bound, chained_primal_vectors, chained_quantum_bound,
};
use tsirelson_core::classical::{lhv_bound, ClassicalBound};
use tsirelson_core::linalg::{dot, norm, sym_eigen, vectors_from_gram, SymMatrix, DEFAULT_PSD_TOL};
use tsirelson_core::realization::{inequality_value, realize, QuantumRealization};
use tsirelson_core::sdp::{certify, CERTIFIED_GAP};
use tsirelson_core::{build_objective, solve, BoundReport, CorrelationInequality};

use crate::config::{Command, InequalityKind, RunConfig};
use crate::error::CliError;
use crate::format;
use crate::report::{num, Report, Table, Text};

/// Gram eigen-directions with every component below this are dropped when
/// solver vectors are compressed for realization.
const COMPRESS_TOL: f64 = 1e-9;

/// Runs one command and returns its report.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Bound => bound(cfg),
        Command::Certify => certify_lambda(cfg),
        Command::Classical => classical(cfg),
        Command::Realize => realize_observables(cfg),
        Command::Spectrum => spectrum(cfg),
        Command::Table => table(cfg),
    }
}

fn inequality(cfg: &RunConfig, n: Option<usize>) -> Result<CorrelationInequality, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Usage("--n is required".into()));
    Ok(match cfg.inequality {
        InequalityKind::Chained => CorrelationInequality::chained(need_n()?)?,
        InequalityKind::Gisin => CorrelationInequality::gisin(need_n()?)?,
        InequalityKind::Chsh => CorrelationInequality::chsh(),
        InequalityKind::File => {
            let path = cfg
                .file
                .as_deref()
                .ok_or_else(|| CliError::Usage("--inequality file requires --file".into()))?;
            format::read_inequality(path)?
        }
    })
}

/// Closed-form (quantum, classical) values where the family has them.
fn analytic_values(kind: InequalityKind, n: Option<usize>) -> Result<Option<(f64, f64)>, CliError> {
    Ok(match (kind, n) {
        (InequalityKind::Chained, Some(n)) => {
            Some((chained_quantum_bound(n)?, chained_classical_bound(n)?))
        }
        (InequalityKind::Chsh, _) => Some((2.0 * SQRT_2, 2.0)),
        _ => None,
    })
}

fn solver_failure(r: &BoundReport) -> Option<String> {
    (!r.primal.converged && r.gap > CERTIFIED_GAP).then(|| {
        format!(
            "{}: ascent stopped after {} sweeps (residual {:e}) with gap {:e} above {:e}",
            r.name, r.primal.iterations, r.primal.residual, r.gap, CERTIFIED_GAP
        )
    })
}

fn signs(v: &[i8]) -> String {
    v.iter()
        .map(|&s| if s > 0 { "+" } else { "-" })
        .collect::<Vec<_>>()
        .join("")
}

fn inequality_json(ineq: &CorrelationInequality) -> Value {
    json!({
        "name": ineq.name(),
        "n_alice": ineq.n_alice(),
        "n_bob": ineq.n_bob(),
        "coefficients": ineq.rows(),
    })
}

fn classical_json(c: &ClassicalBound) -> Value {
    json!({"value": c.value, "witness_x": c.witness_x, "witness_y": c.witness_y})
}

fn settings(ineq: &CorrelationInequality) -> String {
    format!(
        "{} ({} x {} settings)",
        ineq.name(),
        ineq.n_alice(),
        ineq.n_bob()
    )
}

fn bound(cfg: &RunConfig) -> Result<Report, CliError> {
    let ineq = inequality(cfg, cfg.n)?;
    let r = solve(&ineq, &cfg.solve_options(cfg.seed))?;
    let analytic = analytic_values(cfg.inequality, cfg.n)?;
    let config = cfg.to_json();
    let document = json!({
        "command": "bound",
        "config": config,
        "inequality": inequality_json(&ineq),
        "quantum_bound": r.dual.certified_bound,
        "classical_bound": r.classical.as_ref().map(|c| c.value),
        "primal": {
            "value": r.primal.value,
            "iterations": r.primal.iterations,
            "residual": r.primal.residual,
            "rank": r.primal.rank,
            "seed": r.primal.seed,
            "converged": r.primal.converged,
        },
        "dual": {
            "certified_bound": r.dual.certified_bound,
            "feasibility_margin": r.dual.feasibility_margin,
            "lambda": r.dual.lambda,
        },
        "gap": r.gap,
        "certified_optimal": r.is_certified_optimal(),
        "classical": r.classical.as_ref().map(classical_json),
        "analytic": analytic.map(|(q, c)| json!({"quantum": q, "classical": c})),
        "runs": r.runs.iter().map(|s| json!({
            "seed": s.seed,
            "rank": s.rank,
            "iterations": s.iterations,
            "residual": s.residual,
            "converged": s.converged,
            "primal_value": s.primal_value,
            "certified_bound": s.certified_bound,
        })).collect::<Vec<_>>(),
    });

    let mut t = Text::default();
    t.config(&config)
        .line("inequality", settings(&ineq))
        .line("quantum bound", num(r.dual.certified_bound))
        .line("primal value", num(r.primal.value))
        .line("gap", num(r.gap))
        .line(
            "certified",
            if r.is_certified_optimal() {
                "yes"
            } else {
                "no"
            },
        );
    match &r.classical {
        Some(c) => t.line(
            "classical bound",
            format!(
                "{} (x = {}, y = {})",
                num(c.value),
                signs(&c.witness_x),
                signs(&c.witness_y)
            ),
        ),
        None => t.line("classical bound", "not computed (too many settings)"),
    };
    if let Some((q, c)) = analytic {
        t.line(
            "analytic",
            format!("quantum {}, classical {}", num(q), num(c)),
        );
    }
    t.line(
        "solver",
        format!(
            "seed {}, rank {}, {} sweeps, residual {}, {} run(s)",
            r.primal.seed,
            r.primal.rank,
            r.primal.iterations,
            num(r.primal.residual),
            r.runs.len()
        ),
    );

    Ok(Report {
        document,
        text: t.finish(),
        table: None,
        failure: solver_failure(&r),
    })
}

fn certify_lambda(cfg: &RunConfig) -> Result<Report, CliError> {
    let ineq = inequality(cfg, cfg.n)?;
    let path = cfg
        .lambda_file
        .as_deref()
        .ok_or_else(|| CliError::Usage("certify requires --lambda-file".into()))?;
    let lambda = format::read_lambda(path, ineq.n_settings())?;
    let cert = certify(&build_objective(&ineq), &lambda)?;
    let config = cfg.to_json();
    let document = json!({
        "command": "certify",
        "config": config,
        "inequality": inequality_json(&ineq),
        "lambda": cert.lambda,
        "feasibility_margin": cert.feasibility_margin,
        "shift": cert.shift(),
        "feasible_lambda": cert.feasible_lambda(),
        "certified_bound": cert.certified_bound,
    });
    let text = Text::default()
        .config(&config)
        .line("inequality", settings(&ineq))
        .line("sum of lambda", num(cert.lambda.iter().sum()))
        .line("feasibility margin", num(cert.feasibility_margin))
        .line("shift", num(cert.shift()))
        .line("certified bound", num(cert.certified_bound))
        .finish();
    Ok(Report {
        document,
        text,
        table: None,
        failure: None,
    })
}

fn classical(cfg: &RunConfig) -> Result<Report, CliError> {
    let ineq = inequality(cfg, cfg.n)?;
    let c = lhv_bound(&ineq)?;
    let config = cfg.to_json();
    let document = json!({
        "command": "classical",
        "config": config,
        "inequality": inequality_json(&ineq),
        "classical": classical_json(&c),
    });
    let text = Text::default()
        .config(&config)
        .line("inequality", settings(&ineq))
        .line("classical bound", num(c.value))
        .line("witness x", signs(&c.witness_x))
        .line("witness y", signs(&c.witness_y))
        .finish();
    Ok(Report {
        document,
        text,
        table: None,
        failure: None,
    })
}

/// Shortest vectors with the same Gram matrix, unit-normalized again after
/// dropping negligible directions.
fn compress(gram: &SymMatrix) -> Result<Vec<Vec<f64>>, CliError> {
    let full = vectors_from_gram(gram, DEFAULT_PSD_TOL)?;
    let len = full.first().map_or(0, Vec::len);
    let keep: Vec<usize> = (0..len)
        .filter(|&k| full.iter().any(|v| v[k].abs() > COMPRESS_TOL))
        .collect();
    Ok(full
        .iter()
        .map(|v| {
            let w: Vec<f64> = keep.iter().map(|&k| v[k]).collect();
            let n = norm(&w);
            w.into_iter().map(|x| x / n).collect()
        })
        .collect())
}

fn max_defects(r: &QuantumRealization) -> (f64, f64) {
    r.xs.iter()
        .chain(&r.ys)
        .fold((0.0f64, 0.0f64), |(h, i), o| {
            (h.max(o.hermitian_defect()), i.max(o.involution_defect()))
        })
}

fn realize_observables(cfg: &RunConfig) -> Result<Report, CliError> {
    let ineq = inequality(cfg, cfg.n)?;
    let na = ineq.n_alice();
    let (xs, ys, source, reference, failure) = match (cfg.inequality, cfg.n) {
        (InequalityKind::Chained, Some(n)) => {
            let (xs, ys) = chained_primal_vectors(n)?;
            let planar = |v: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
                v.into_iter().map(|x| x[..2].to_vec()).collect()
            };
            (
                planar(xs),
                planar(ys),
                "analytic",
                chained_quantum_bound(n)?,
                None,
            )
        }
        _ => {
            let r = solve(&ineq, &cfg.solve_options(cfg.seed))?;
            let mut vs = compress(&r.primal.gram)?;
            let ys = vs.split_off(na);
            (vs, ys, "solver", r.dual.certified_bound, solver_failure(&r))
        }
    };
    let real = realize(&xs, &ys)?;
    let corr = real.correlations()?;
    let mut max_err = 0.0f64;
    for (s, x) in xs.iter().enumerate() {
        for (t, y) in ys.iter().enumerate() {
            max_err = max_err.max((corr[s][t] - dot(x, y)).abs());
        }
    }
    let value = inequality_value(&ineq, &real)?;
    let (herm, inv) = max_defects(&real);
    let config = cfg.to_json();
    let document = json!({
        "command": "realize",
        "config": config,
        "inequality": inequality_json(&ineq),
        "vector_source": source,
        "vector_len": real.vector_len,
        "hilbert_dim": real.dim,
        "alice_vectors": xs,
        "bob_vectors": ys,
        "correlations": corr,
        "achieved_value": value,
        "reference_bound": reference,
        "max_correlation_error": max_err,
        "max_hermitian_defect": herm,
        "max_involution_defect": inv,
    });
    let text = Text::default()
        .config(&config)
        .line("inequality", settings(&ineq))
        .line("vectors", format!("{source}, length {}", real.vector_len))
        .line("local dimension", real.dim.to_string())
        .line("achieved value", num(value))
        .line("reference bound", num(reference))
        .line("max corr. error", num(max_err))
        .line(
            "observable defect",
            format!("hermitian {}, X^2 = I {}", num(herm), num(inv)),
        )
        .finish();
    Ok(Report {
        document,
        text,
        table: None,
        failure,
    })
}

fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let n = cfg
        .n
        .ok_or_else(|| CliError::Usage("--n is required".into()))?;
    let closed = chained_a_spectrum(n)?;
    let w = build_objective(&CorrelationInequality::chained(n)?);
    let numeric = sym_eigen(w.matrix())?;
    let expected = closed.w_eigenvalues();
    let deviation = numeric
        .eigenvalues()
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let config = cfg.to_json();
    let document = json!({
        "command": "spectrum",
        "config": config,
        "gammas": closed.gammas.iter().map(|g| [g.re, g.im]).collect::<Vec<_>>(),
        "sigmas": closed.sigmas,
        "w_max": closed.w_max,
        "eigenpair_residual": closed.residual,
        "w_eigenvalues": expected,
        "numeric_w_eigenvalues": numeric.eigenvalues(),
        "max_deviation": deviation,
    });
    let mut t = Text::default();
    t.config(&config);
    for (s, (g, sigma)) in closed.gammas.iter().zip(&closed.sigmas).enumerate() {
        t.line(
            &format!("s = {s}"),
            format!(
                "gamma = {} {:+?}i, sigma = {}",
                num(g.re),
                g.im,
                num(*sigma)
            ),
        );
    }
    t.line("w max", num(closed.w_max))
        .line("eigenpair residual", num(closed.residual))
        .line("numeric deviation", num(deviation));
    Ok(Report {
        document,
        text: t.finish(),
        table: None,
        failure: None,
    })
}

struct Row {
    n: usize,
    seed: u64,
    classical: Option<f64>,
    analytic: Option<f64>,
    numeric: f64,
    gap: f64,
    failure: Option<String>,
}

fn table_row(cfg: &RunConfig, n: usize) -> Result<Row, CliError> {
    let seed = cfg.seed.wrapping_add(n as u64);
    let ineq = inequality(cfg, Some(n))?;
    let r = solve(&ineq, &cfg.solve_options(seed))?;
    Ok(Row {
        n,
        seed,
        classical: r.classical.as_ref().map(|c| c.value),
        analytic: analytic_values(cfg.inequality, Some(n))?.map(|(q, _)| q),
        numeric: r.dual.certified_bound,
        gap: r.gap,
        failure: solver_failure(&r),
    })
}

const TABLE_HEADER: [&str; 10] = [
    "n",
    "classical",
    "quantum_analytic",
    "quantum_numeric",
    "gap",
    "inequality",
    "seed",
    "rank",
    "max_iter",
    "tol",
];

fn table(cfg: &RunConfig) -> Result<Report, CliError> {
    let range = cfg
        .n_range
        .ok_or_else(|| CliError::Usage("table requires --n-range".into()))?;
    let ns: Vec<usize> = range.values().collect();
    let workers = thread::available_parallelism()
        .map_or(1, |p| p.get())
        .clamp(1, ns.len().max(1));
    // Contiguous chunks keep the output ordered by n.
    let rows: Vec<Row> = thread::scope(|scope| {
        let handles: Vec<_> = ns
            .chunks(ns.len().div_ceil(workers).max(1))
            .map(|chunk| {
                scope.spawn(move || chunk.iter().map(|&n| table_row(cfg, n)).collect::<Vec<_>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("table worker panicked"))
            .collect::<Result<_, _>>()
    })?;

    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                opt(r.classical),
                opt(r.analytic),
                num(r.numeric),
                num(r.gap),
                cfg.inequality.as_str().to_string(),
                r.seed.to_string(),
                cfg.rank.map(|k| k.to_string()).unwrap_or_default(),
                cfg.max_iter.to_string(),
                num(cfg.tol),
            ]
        })
        .collect();

    let config = cfg.to_json();
    let document = json!({
        "command": "table",
        "config": config,
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "seed": r.seed,
            "classical": r.classical,
            "quantum_analytic": r.analytic,
            "quantum_numeric": r.numeric,
            "gap": r.gap,
        })).collect::<Vec<_>>(),
    });

    let mut text = Text::default();
    text.config(&config);
    let mut body = text.finish();
    let widths: Vec<usize> = (0..5)
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].len())
                .chain([TABLE_HEADER[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let fmt_row = |r: &[&str]| {
        let padded: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    body.push_str(&fmt_row(&TABLE_HEADER[..5]));
    for r in &cells {
        let refs: Vec<&str> = r[..5].iter().map(String::as_str).collect();
        body.push_str(&fmt_row(&refs));
    }

    let failures: Vec<String> = rows.into_iter().filter_map(|r| r.failure).collect();
    Ok(Report {
        document,
        text: body,
        table: Some(Table {
            header: TABLE_HEADER.to_vec(),
            rows: cells,
        }),
        failure: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}
