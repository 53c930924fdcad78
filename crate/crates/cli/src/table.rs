//! Column tables written as CSV or JSON.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub unit: String,
}

/// A table cell. Exact counts do not fit a float and travel as decimal
/// strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Real(f64),
    Exact(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputTable {
    pub fn new(columns: &[(&str, &str)]) -> Self {
        OutputTable {
            columns: columns
                .iter()
                .map(|&(name, unit)| Column { name: name.into(), unit: unit.into() })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row arity must match the columns");
        self.rows.push(row);
    }

    pub fn push_reals(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&v| Cell::Real(v)).collect());
    }

    pub fn write<W: Write>(&self, out: &mut W, format: Format) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let header: Vec<String> = self
            .columns
            .iter()
            .map(|c| if c.unit.is_empty() { c.name.clone() } else { format!("{} [{}]", c.name, c.unit) })
            .collect();
        writeln!(out, "{}", header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(format_cell).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// 17 significant digits, which round-trips every `f64`.
pub fn format_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Real(v) => format_real(*v),
        Cell::Exact(s) => s.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputTable {
        let mut t = OutputTable::new(&[("t", ""), ("s", "nats")]);
        t.push_reals(&[0.1, std::f64::consts::PI]);
        t.push(vec![Cell::Real(1.0 / 3.0), Cell::Exact("12345678901234567890123".into())]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(&mut buf, Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,s [nats]");
        assert_eq!(lines[1], "1.0000000000000001e-1,3.1415926535897931e0");
        assert!(lines[2].ends_with(",12345678901234567890123"));
    }

    #[test]
    fn csv_values_round_trip() {
        for v in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, f64::MIN_POSITIVE] {
            assert_eq!(format_real(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Json).unwrap();
        let back: OutputTable = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    #[should_panic]
    fn arity_is_enforced() {
        OutputTable::new(&[("a", "")]).push_reals(&[1.0, 2.0]);
    }
}
