//! Rows shared by the CSV, JSON and text renderers.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Exact integers that may not fit a machine word (fraction parts).
    BigInt(String),
    Float(f64),
    Bool(bool),
    Text(String),
    Missing,
}

/// Round to 15 significant digits.
pub fn round_sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// `%.15g`-style rendering: plain decimal for moderate magnitudes,
/// exponent notation otherwise, trailing zeros dropped.
pub fn format_decimal(x: f64) -> String {
    let r = round_sig15(x);
    if r == 0.0 {
        return "0".into();
    }
    let mag = r.abs();
    if (1e-5..1e15).contains(&mag) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::BigInt(s) | Cell::Text(s) => s.clone(),
            Cell::Float(x) => format_decimal(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::BigInt(s) | Cell::Text(s) => Value::from(s.as_str()),
            Cell::Float(x) => Number::from_f64(round_sig15(*x)).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::from(*b),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    /// Whitespace-aligned table for terminals.
    pub fn write_text(&self, out: &mut dyn Write) -> Result<()> {
        let rendered: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| rendered.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
        };
        writeln!(out, "{}", line(&self.columns))?;
        for r in &rendered {
            writeln!(out, "{}", line(r))?;
        }
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> crate::error::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => std::io::Error::other(format!("{other:?}")).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_decimal(1.0 / 3.0), "0.333333333333333");
        assert_eq!(format_decimal(2.0 / 9.0), "0.222222222222222");
        assert_eq!(format_decimal(3f64.log2()), "1.58496250072116");
        assert_eq!(format_decimal(2.0), "2");
        assert_eq!(format_decimal(0.0), "0");
        assert_eq!(format_decimal(3.4e-20), "3.4e-20");
        assert_eq!(format_decimal(-1.0 / 7.0), "-0.142857142857143");
    }

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new(["a", "b", "c"]);
        t.push(vec![Cell::Int(1), Cell::BigInt("123456789012345678901234567890".into()), Cell::Float(0.5)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,c\n1,123456789012345678901234567890,0.5\n");
        let json = t.json_rows();
        assert_eq!(json[0]["a"], 1);
        assert_eq!(json[0]["b"], "123456789012345678901234567890");
        assert_eq!(json[0]["c"], 0.5);
    }
}
