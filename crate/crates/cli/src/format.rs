//! Input file formats.
//!
//! An inequality file is a JSON object
//!
//! ```json
//! {"name": "chsh", "coefficients": [[1, 1], [1, -1]]}
//! ```
//!
//! whose `coefficients[s][t]` weights `<X_s Y_t>`. A dual vector file is a
//! JSON array of numbers, Alice's entries first.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use tsirelson_core::CorrelationInequality;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InequalityDocument {
    name: String,
    coefficients: Vec<Vec<f64>>,
}

/// Parses an inequality document. Syntax and schema errors carry the line
/// and column reported by the JSON parser.
pub fn parse_inequality(text: &str) -> Result<CorrelationInequality, String> {
    let doc: InequalityDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
    CorrelationInequality::new(doc.name, &doc.coefficients).map_err(|e| e.to_string())
}

/// Parses a dual vector and checks its length.
pub fn parse_lambda(text: &str, expected: usize) -> Result<Vec<f64>, String> {
    let lambda: Vec<f64> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if lambda.len() != expected {
        return Err(format!(
            "expected {expected} dual weights (one per setting), found {}",
            lambda.len()
        ));
    }
    Ok(lambda)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Reads and parses an inequality file.
pub fn read_inequality(path: &Path) -> Result<CorrelationInequality, CliError> {
    parse_inequality(&read(path)?).map_err(|m| CliError::input(path, m))
}

/// Reads and parses a dual vector file.
pub fn read_lambda(path: &Path, expected: usize) -> Result<Vec<f64>, CliError> {
    parse_lambda(&read(path)?, expected).map_err(|m| CliError::input(path, m))
}
