//! Tables rendered as CSV or JSON with fixed float formatting.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Value};

/// `%.10e` as printed by C: ten mantissa digits, signed two-digit exponent.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // Negative zero prints as zero.
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.10e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    /// Several floats in one column, `;`-separated in CSV.
    List(Vec<f64>),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => sci(*x),
            Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
            Cell::Text(t) => t.clone(),
            Cell::List(xs) => xs.iter().map(|x| sci(*x)).collect::<Vec<_>>().join(";"),
            Cell::Empty => String::new(),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => float(*x),
            Cell::Text(t) => Value::from(t.as_str()),
            Cell::List(xs) => Value::Array(xs.iter().map(|x| float(*x)).collect()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Non-finite values have no JSON form; they become null.
pub fn float(x: f64) -> Value {
    let x = if x == 0.0 { 0.0 } else { x };
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    /// One object per row; keys are the column names in snake_case.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_ascii_lowercase(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                // A closed pipe (e.g. `| head`) is not a failure.
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponents() {
        assert_eq!(sci(0.0026), "2.6000000000e-03");
        assert_eq!(sci(-48.0), "-4.8000000000e+01");
        assert_eq!(sci(0.0), "0.0000000000e+00");
        assert_eq!(sci(-0.0), "0.0000000000e+00");
        assert_eq!(sci(1.5e120), "1.5000000000e+120");
        assert_eq!(sci(f64::NAN), "nan");
    }

    #[test]
    fn csv_and_json_share_columns() {
        let mut t = Table::new(&["m", "E0", "label", "w"]);
        t.push(vec![1usize.into(), 2.5.into(), "a,b".to_string().into(), Cell::List(vec![0.5, 0.5])]);
        assert_eq!(
            t.to_csv(),
            "m,E0,label,w\n1,2.5000000000e+00,\"a,b\",5.0000000000e-01;5.0000000000e-01\n"
        );
        let v = t.to_json_value();
        assert_eq!(v[0]["e0"], 2.5);
        assert_eq!(v[0]["w"][1], 0.5);
    }
}
