//! Command-line front end for `tsirelson-core`.
//!
//! Parses flags into a [`RunConfig`], runs one subcommand, and renders the
//! resulting [`Report`] as text, canonical JSON or CSV.

mod commands;
pub mod config;
mod error;
pub mod format;
pub mod report;

use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub use commands::run;
pub use config::RunConfig;
pub use error::CliError;
pub use report::Report;

/// Runs `cfg`, writes the rendered report, and returns the failure message
/// when the report could not be certified.
pub fn execute(cfg: &RunConfig) -> Result<Option<String>, CliError> {
    let report = run(cfg)?;
    let rendered = report.render(cfg.format);
    match &cfg.output {
        Some(path) => fs::write(path, rendered).map_err(|e| CliError::io(path, e))?,
        None => io::stdout()
            .lock()
            .write_all(rendered.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e))?,
    }
    Ok(report.failure)
}
