//! Command-line arguments and the validated run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tsirelson_core::sdp::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use tsirelson_core::SolveOptions;

use crate::error::CliError;

/// Raw command line as parsed by clap.
#[derive(Debug, Parser)]
#[command(
    name = "tsirelson",
    version,
    about = "Quantum and classical bounds for correlation Bell inequalities"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,

    /// Inequality family, or `file` to read coefficients from --file.
    #[arg(long, value_enum, global = true)]
    pub inequality: Option<InequalityKind>,

    /// Number of settings per side for the chained and Gisin families.
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Inclusive range of n for `table`, written A..B.
    #[arg(long = "n-range", global = true, value_name = "A..B")]
    pub n_range: Option<NRange>,

    /// JSON inequality file: {"name": ..., "coefficients": [[...], ...]}.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,

    /// JSON array of dual weights for `certify`.
    #[arg(long = "lambda-file", global = true)]
    pub lambda_file: Option<PathBuf>,

    /// Solver seed.
    #[arg(long, global = true, env = "TSIRELSON_SEED")]
    pub seed: Option<u64>,

    /// Vector length used by the solver (defaults to the number of settings).
    #[arg(long, global = true)]
    pub rank: Option<usize>,

    /// Sweep cap for the solver.
    #[arg(long = "max-iter", global = true)]
    pub max_iter: Option<usize>,

    /// Convergence tolerance on the per-sweep displacement.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Output format (text by default, csv for `table`).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// Subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solve and certify the quantum bound; also report the classical bound.
    Bound,
    /// Certify an upper bound from a dual vector read from --lambda-file.
    Certify,
    /// Classical (local hidden variable) bound with an optimal strategy.
    Classical,
    /// Build ±1 observables and check the value they achieve.
    Realize,
    /// Closed-form spectrum of the chained objective.
    Spectrum,
    /// Sweep n over --n-range and tabulate the bounds.
    Table,
}

impl Command {
    fn as_str(self) -> &'static str {
        match self {
            Command::Bound => "bound",
            Command::Certify => "certify",
            Command::Classical => "classical",
            Command::Realize => "realize",
            Command::Spectrum => "spectrum",
            Command::Table => "table",
        }
    }
}

#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InequalityKind {
    Chained,
    Chsh,
    Gisin,
    File,
}

impl InequalityKind {
    /// Flag spelling.
    pub fn as_str(self) -> &'static str {
        match self {
            InequalityKind::Chained => "chained",
            InequalityKind::Chsh => "chsh",
            InequalityKind::Gisin => "gisin",
            InequalityKind::File => "file",
        }
    }
}

#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Inclusive range `start..end` of n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    /// The values of n in order.
    pub fn values(self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("invalid bound {t:?} in {s:?}: {e}"))
        };
        Ok(NRange {
            start: parse(a)?,
            end: parse(b)?,
        })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Validated configuration for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub inequality: InequalityKind,
    pub n: Option<usize>,
    pub n_range: Option<NRange>,
    pub file: Option<PathBuf>,
    pub lambda_file: Option<PathBuf>,
    pub seed: u64,
    pub rank: Option<usize>,
    pub max_iter: usize,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl TryFrom<Args> for RunConfig {
    type Error = CliError;

    fn try_from(a: Args) -> Result<Self, CliError> {
        let inequality = a
            .inequality
            .ok_or_else(|| usage("--inequality is required"))?;
        let family = matches!(inequality, InequalityKind::Chained | InequalityKind::Gisin);
        if a.n == Some(0) {
            return Err(usage("--n must be at least 1"));
        }
        let mut n_range = a.n_range;
        match a.command {
            Command::Table => {
                if !family {
                    return Err(usage("table supports --inequality chained or gisin"));
                }
                if n_range.is_none() {
                    n_range = a.n.map(|n| NRange { start: n, end: n });
                }
                let r = n_range.ok_or_else(|| usage("table requires --n-range A..B or --n"))?;
                if r.start == 0 || r.start > r.end {
                    return Err(usage(format!("--n-range {r} must satisfy 1 <= A <= B")));
                }
            }
            _ if family && a.n.is_none() => {
                return Err(usage(format!(
                    "--inequality {} requires --n",
                    inequality.as_str()
                )));
            }
            _ => {}
        }
        if inequality == InequalityKind::File && a.file.is_none() {
            return Err(usage("--inequality file requires --file"));
        }
        if a.command == Command::Certify && a.lambda_file.is_none() {
            return Err(usage("certify requires --lambda-file"));
        }
        if a.command == Command::Spectrum && inequality != InequalityKind::Chained {
            return Err(usage("spectrum is only available for --inequality chained"));
        }
        let tol = a.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(usage(format!(
                "--tol must be positive and finite, got {tol}"
            )));
        }
        let max_iter = a.max_iter.unwrap_or(DEFAULT_MAX_ITER);
        if max_iter == 0 {
            return Err(usage("--max-iter must be at least 1"));
        }
        let format = a.format.unwrap_or(match a.command {
            Command::Table => Format::Csv,
            _ => Format::Text,
        });
        Ok(RunConfig {
            command: a.command,
            inequality,
            n: a.n,
            n_range,
            file: a.file,
            lambda_file: a.lambda_file,
            seed: a.seed.unwrap_or(0),
            rank: a.rank,
            max_iter,
            tol,
            format,
            output: a.output,
        })
    }
}

impl RunConfig {
    /// Parses and validates a full command line (program name first).
    pub fn from_command_line<I, T>(args: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args = Args::try_parse_from(args).map_err(|e| usage(e.to_string()))?;
        Self::try_from(args)
    }

    /// Solver options for one solve with the given seed.
    pub fn solve_options(&self, seed: u64) -> SolveOptions {
        SolveOptions {
            rank: self.rank,
            seed,
            max_iter: self.max_iter,
            tol: self.tol,
        }
    }

    /// Provenance block embedded in every report. The output path is left
    /// out so that the same run gives the same bytes wherever it is written.
    pub fn to_json(&self) -> Value {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        json!({
            "command": self.command.as_str(),
            "inequality": self.inequality.as_str(),
            "n": self.n,
            "n_range": self.n_range.map(|r| r.to_string()),
            "file": path(&self.file),
            "lambda_file": path(&self.lambda_file),
            "seed": self.seed,
            "rank": self.rank,
            "max_iter": self.max_iter,
            "tol": self.tol,
            "format": self.format.as_str(),
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> Result<RunConfig, CliError> {
        RunConfig::from_command_line(std::iter::once("tsirelson").chain(line.split_whitespace()))
    }

    #[test]
    fn defaults() {
        let c = parse("bound --inequality chained --n 5").unwrap();
        assert_eq!(c.command, Command::Bound);
        assert_eq!(c.n, Some(5));
        assert_eq!(c.max_iter, DEFAULT_MAX_ITER);
        assert_eq!(c.tol, DEFAULT_TOL);
        assert_eq!(c.format, Format::Text);
        assert_eq!(
            parse("table --inequality gisin --n-range 2..4")
                .unwrap()
                .format,
            Format::Csv
        );
    }

    #[test]
    fn flags_may_precede_the_subcommand() {
        let c = parse("--inequality gisin --n 3 --seed 9 classical").unwrap();
        assert_eq!(c.command, Command::Classical);
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn range_parsing() {
        assert_eq!(
            "2..8".parse::<NRange>().unwrap(),
            NRange { start: 2, end: 8 }
        );
        assert!("2-8".parse::<NRange>().is_err());
        assert!("a..3".parse::<NRange>().is_err());
        let c = parse("table --inequality chained --n 4").unwrap();
        assert_eq!(c.n_range, Some(NRange { start: 4, end: 4 }));
    }

    #[test]
    fn invalid_configurations() {
        for line in [
            "bound --n 3",
            "bound --inequality chained",
            "bound --inequality chained --n 0",
            "bound --inequality file",
            "certify --inequality chsh",
            "spectrum --inequality gisin --n 3",
            "table --inequality chsh --n-range 1..2",
            "table --inequality chained --n-range 5..2",
            "table --inequality chained --n-range 0..2",
            "table --inequality chained",
            "bound --inequality chsh --tol -1",
            "bound --inequality chsh --max-iter 0",
            "bound --inequality nope",
        ] {
            assert!(matches!(parse(line), Err(CliError::Usage(_))), "{line}");
        }
    }

    #[test]
    fn provenance_omits_output_path() {
        let a = parse("bound --inequality chsh --output a.json").unwrap();
        let b = parse("bound --inequality chsh --output b.json").unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_json()["inequality"], "chsh");
    }
}
