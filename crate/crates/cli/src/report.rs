//! Report writers: fixed-width tables, JSON and CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

/// 17 significant digits.
pub fn fmt_machine(x: f64) -> String {
    format!("{x:.16e}")
}

/// 10 significant digits.
pub fn fmt_human(x: f64) -> String {
    format!("{x:.9e}")
}

/// Compact JSON with every float written at 17 significant digits.
struct RoundTripFormatter;

impl Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_machine(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

#[derive(Debug)]
pub enum ReportError {
    Empty,
    Io(io::Error),
    Encode(String),
}

impl std::fmt::Display for ReportError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportError::Empty => f.write_str("report has no rows"),
            ReportError::Io(e) => write!(f, "io: {e}"),
            ReportError::Encode(e) => write!(f, "encode: {e}"),
        }
    }
}

impl From<io::Error> for ReportError {
    fn from(e: io::Error) -> Self {
        ReportError::Io(e)
    }
}

/// One row as ordered `(column, value)` pairs; arrays become `name_0, name_1, ..`.
fn flatten<T: Serialize>(row: &T) -> Result<Vec<(String, Value)>, ReportError> {
    let value = serde_json::to_value(row).map_err(|e| ReportError::Encode(e.to_string()))?;
    let mut out = Vec::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Array(items) => {
                        out.extend(items.into_iter().enumerate().map(|(i, item)| (format!("{k}_{i}"), item)))
                    }
                    other => out.push((k, other)),
                }
            }
        }
        other => out.push(("value".to_string(), other)),
    }
    Ok(out)
}

fn cell(v: &Value, float: fn(f64) -> String) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => float(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_report<T: Serialize, W: Write>(rows: &[T], format: OutputFormat, out: W) -> Result<(), ReportError> {
    if rows.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut out = out;
    match format {
        OutputFormat::Json => {
            let mut ser = serde_json::Serializer::with_formatter(&mut out, RoundTripFormatter);
            rows.serialize(&mut ser).map_err(|e| ReportError::Encode(e.to_string()))?;
            out.write_all(b"\n")?;
        }
        OutputFormat::Csv => {
            let flat = rows.iter().map(flatten).collect::<Result<Vec<_>, _>>()?;
            let mut w = csv::Writer::from_writer(&mut out);
            let encode = |e: csv::Error| ReportError::Encode(e.to_string());
            w.write_record(flat[0].iter().map(|(k, _)| k.as_str())).map_err(encode)?;
            for row in &flat {
                w.write_record(row.iter().map(|(_, v)| cell(v, fmt_machine))).map_err(encode)?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            let flat = rows.iter().map(flatten).collect::<Result<Vec<_>, _>>()?;
            let header: Vec<String> = flat[0].iter().map(|(k, _)| k.clone()).collect();
            let body: Vec<Vec<String>> = flat
                .iter()
                .map(|row| row.iter().map(|(_, v)| cell(v, fmt_human)).collect())
                .collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| body.iter().map(|r| r.get(i).map_or(0, String::len)).chain([header[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(&header))?;
            for r in &body {
                writeln!(out, "{}", line(r))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes `rows` to `path`, or to stdout when `path` is `None`.
pub fn emit_report<T: Serialize>(rows: &[T], format: OutputFormat, path: Option<&Path>) -> Result<(), ReportError> {
    match path {
        Some(p) => write_report(rows, format, BufWriter::new(File::create(p)?)),
        None => write_report(rows, format, io::stdout().lock()),
    }
}
