//! Report rendering: canonical JSON, text summaries and CSV.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::Value;

use crate::config::Format;

/// A finished report, renderable in every output format.
#[derive(Debug, Clone)]
pub struct Report {
    /// Structured content; always carries a `config` member.
    pub document: Value,
    /// Human-readable summary.
    pub text: String,
    /// Rows for CSV output; documents without rows are flattened instead.
    pub table: Option<Table>,
    /// Set when the numbers are reported but could not be certified.
    pub failure: Option<String>,
}

/// Header plus rows of preformatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    /// Renders the report in the requested format.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = to_canonical_json(&self.document);
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Csv => match &self.table {
                Some(t) => table_csv(t),
                None => {
                    let mut rows = Vec::new();
                    flatten("", &self.document, &mut rows);
                    table_csv(&Table {
                        header: vec!["key", "value"],
                        rows: rows.into_iter().map(|(k, v)| vec![k, v]).collect(),
                    })
                }
            },
        }
    }
}

/// JSON formatter writing every float with 17 significant digits.
struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

/// Compact JSON with sorted keys and 17-significant-digit floats. Parsing
/// the output and serializing it again reproduces the same bytes.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, CanonicalFormatter);
    value
        .serialize(&mut ser)
        .expect("serializing a JSON value into memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Number formatting for text and CSV: shortest round-trip representation.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_u64() && !n.is_i64() => num(x),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&key(k), child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), child, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn table_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory CSV write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV cells are UTF-8")
}

/// Line-oriented builder for text summaries.
#[derive(Debug, Default)]
pub(crate) struct Text(String);

impl Text {
    pub fn line(&mut self, label: &str, value: impl AsRef<str>) -> &mut Self {
        self.0.push_str(&format!("{label:<20}{}\n", value.as_ref()));
        self
    }

    pub fn config(&mut self, config: &Value) -> &mut Self {
        let pairs: Vec<String> = config
            .as_object()
            .into_iter()
            .flatten()
            .filter(|(_, v)| !v.is_null())
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect();
        self.line("config", pairs.join(" "))
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn canonical_json_is_a_fixed_point() {
        let v = json!({
            "z": 1.0,
            "a": [0.1, -2.5e-300, 9.510565162951535, 3],
            "m": {"k": null, "b": true, "s": "x"},
            "neg": -0.0,
        });
        let once = to_canonical_json(&v);
        assert!(
            once.starts_with(r#"{"a":[1.0000000000000001e-1,"#),
            "{once}"
        );
        let again = to_canonical_json(&serde_json::from_str(&once).unwrap());
        assert_eq!(once, again);
    }

    #[test]
    fn floats_survive_exactly() {
        for x in [
            std::f64::consts::PI,
            1e-10,
            2.0 * std::f64::consts::SQRT_2,
            f64::MAX,
            5e-324,
        ] {
            let s = to_canonical_json(&json!([x]));
            let back: Vec<f64> = serde_json::from_str(&s).unwrap();
            assert_eq!(back[0].to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_flattening() {
        let r = Report {
            document: json!({"b": {"x": [1.5, 2]}, "a": "q,r", "c": null}),
            text: String::new(),
            table: None,
            failure: None,
        };
        assert_eq!(
            r.render(Format::Csv),
            "key,value\na,\"q,r\"\nb.x.0,1.5\nb.x.1,2\nc,\n"
        );
    }
}
