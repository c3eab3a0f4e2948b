//! Report tables rendered as JSON or CSV with every float printed to 17
//! significant digits.

use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    List(Vec<f64>),
    Empty,
}

pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn to_value(&self) -> Value {
        match self {
            Cell::Num(v) => Value::from(*v),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::List(v) => Value::from(v.clone()),
            Cell::Empty => Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(v) => v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(" "),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub passed: bool,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra top-level JSON fields (CSV carries the same numbers in `rows`).
    pub extra: Vec<(&'static str, Cell)>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self { command, passed: true, columns, rows: Vec::new(), extra: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Result<String> {
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command));
        top.insert("passed".into(), Value::from(self.passed));
        for (k, v) in &self.extra {
            top.insert((*k).into(), v.to_value());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| ((*c).to_string(), v.to_value())).collect()))
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        let mut out = to_string_17(&Value::Object(top))?;
        out.push('\n');
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(Cell::to_csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

/// Compact JSON formatter that prints floats as `{:.16e}`.
struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        CompactFormatter.begin_object_key(writer, first)
    }
}

pub fn to_string_17<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf)?)
}

/// Writes through a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_17_digits() {
        let s = to_string_17(&serde_json::json!({"x": 0.1, "y": [1.0, -2.5e-300]})).unwrap();
        assert_eq!(s, r#"{"x":1.0000000000000001e-1,"y":[1.0000000000000000e0,-2.5000000000000000e-300]}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64().unwrap(), 0.1);
    }

    #[test]
    fn csv_and_json_share_numbers() {
        let mut r = Report::new("demo", vec!["t", "label", "angles"]);
        r.push(vec![Cell::Num(1e-4), Cell::Text("a,b".into()), Cell::List(vec![0.5, 0.25])]);
        assert_eq!(r.to_csv(), "t,label,angles\n1.0000000000000000e-4,\"a,b\",5.0000000000000000e-1 2.5000000000000000e-1\n");
        let json = r.to_json().unwrap();
        assert!(json.contains("\"t\":1.0000000000000000e-4"));
        assert!(json.contains("\"angles\":[5.0000000000000000e-1,2.5000000000000000e-1]"));
    }

    #[test]
    fn non_finite_values_become_null() {
        let mut r = Report::new("demo", vec!["v"]);
        r.push(vec![Cell::Num(f64::NAN)]);
        assert!(r.to_json().unwrap().contains("\"v\":null"));
    }
}
