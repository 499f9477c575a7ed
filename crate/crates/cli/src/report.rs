//! Deterministic report formatting: CSV and JSON emission with numbers at
//! 15 significant digits (integers as integers), plus the provenance
//! sidecar written next to every file report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

/// One report cell.
#[derive(Debug, Clone)]
pub enum Cell {
    UInt(u128),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => fmt_g15(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::UInt(v) => json!(*v as u64),
            Cell::Float(v) => {
                let rounded: f64 = fmt_g15(*v).parse().unwrap_or(*v);
                serde_json::Number::from_f64(rounded)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// A tabular report with a fixed column schema.
#[derive(Debug, Clone)]
pub struct Table {
    pub schema: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// When set, the CSV form is emitted as bare rows without a header
    /// (used by `qpoly`, whose contract is a plain coefficient list).
    pub headerless_csv: bool,
}

impl Table {
    pub fn new(schema: &'static str, columns: Vec<&'static str>) -> Self {
        Table::new_owned(schema, columns.into_iter().map(String::from).collect())
    }

    pub fn new_owned(schema: &'static str, columns: Vec<String>) -> Self {
        Table {
            schema,
            columns,
            rows: Vec::new(),
            headerless_csv: false,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.headerless_csv {
            out.push_str(&self.columns.join(","));
            out.push('\n');
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                // BTreeMap keys sort alphabetically: deterministic output
                let map: BTreeMap<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                Value::Object(map.into_iter().collect())
            })
            .collect();
        let doc = json!({ "schema": self.schema, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Renders and delivers a report: stdout, or `--out` plus a `.meta.json`
/// provenance sidecar carrying the full configuration.
pub fn emit(table: &Table, format: Format, out: Option<&Path>, meta: Value) -> std::io::Result<()> {
    let body = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match out {
        None => {
            print!("{body}");
            std::io::stdout().flush()
        }
        Some(path) => {
            std::fs::write(path, &body)?;
            let sidecar = sidecar_path(path);
            let doc = json!({
                "tool": "fflm",
                "version": env!("CARGO_PKG_VERSION"),
                "schema": table.schema,
                "columns": table.columns,
                "config": meta,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            std::fs::write(sidecar, s)
        }
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    out.with_file_name(name)
}

/// Formats with 15 significant digits, integers as integers, zero as "0".
/// Plain decimal for moderate exponents, normalized e-notation otherwise.
pub fn fmt_g15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let formatted = format!("{:.14e}", x);
    let (mantissa, exp) = formatted.split_once('e').expect("e-notation");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let body = if exp >= 15 || exp < -5 {
        let mut m = String::new();
        m.push(digits.as_bytes()[0] as char);
        if digits.len() > 1 {
            m.push('.');
            m.push_str(&digits[1..]);
        }
        format!("{m}e{exp}")
    } else if exp >= digits.len() as i32 - 1 {
        let zeros = exp - (digits.len() as i32 - 1);
        format!("{digits}{}", "0".repeat(zeros as usize))
    } else if exp >= 0 {
        let split = (exp + 1) as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g15_formatting() {
        assert_eq!(fmt_g15(0.0), "0");
        assert_eq!(fmt_g15(0.5), "0.5");
        assert_eq!(fmt_g15(16.0), "16");
        assert_eq!(fmt_g15(-54.0), "-54");
        assert_eq!(fmt_g15(2.0 / 3.0), "0.666666666666667");
        assert_eq!(fmt_g15(1.0 / 2880.0), "0.000347222222222222");
        assert_eq!(fmt_g15(123456.75), "123456.75");
        assert_eq!(fmt_g15(1e20), "1e20");
        assert_eq!(fmt_g15(-3.25e-9), "-3.25e-9");
        assert_eq!(fmt_g15(1.5e15), "1.5e15");
    }

    #[test]
    fn csv_round_trips_schema() {
        let mut t = Table::new("demo", vec!["a", "b"]);
        t.push(vec![Cell::UInt(1), Cell::Float(0.5)]);
        let csv = t.to_csv();
        assert_eq!(csv, "a,b\n1,0.5\n");
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap().split(',').count(), 2);
        assert_eq!(lines.next().unwrap().split(',').count(), 2);
    }
}
