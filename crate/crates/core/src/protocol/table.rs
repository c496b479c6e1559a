use std::fmt::Write as _;

use super::encoding::EncodingScheme;
use crate::error::{Error, Result};
use crate::quantum::BellLabel;

/// Row-sum tolerance.
pub const ROW_TOL: f64 = 1e-12;

/// Conditional probabilities p(y|x) of Bell outcome `y` given encoded symbol `x`.
///
/// Outputs always span all four Bell labels in [`BellLabel::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalTable {
    inputs: Vec<BellLabel>,
    rows: Vec<[f64; 4]>,
}

impl ConditionalTable {
    pub fn new(inputs: Vec<BellLabel>, rows: Vec<[f64; 4]>) -> Result<Self> {
        if inputs.len() != rows.len() || inputs.is_empty() {
            return Err(Error::Parameter(format!(
                "{} inputs but {} rows",
                inputs.len(),
                rows.len()
            )));
        }
        for (x, row) in inputs.iter().zip(&rows) {
            if row.iter().any(|&p| !(p.is_finite() && p >= 0.0)) {
                return Err(Error::Parameter(format!("row {x} has a negative or non-finite entry")));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > ROW_TOL {
                return Err(Error::Parameter(format!("row {x} sums to {total}")));
            }
        }
        Ok(Self { inputs, rows })
    }

    /// Noiseless channel: every symbol is decoded correctly.
    pub fn identity(scheme: &EncodingScheme) -> Self {
        let rows = scheme
            .alphabet()
            .iter()
            .map(|x| {
                let mut r = [0.0; 4];
                r[x.index()] = 1.0;
                r
            })
            .collect();
        Self {
            inputs: scheme.alphabet().to_vec(),
            rows,
        }
    }

    pub fn inputs(&self) -> &[BellLabel] {
        &self.inputs
    }

    pub fn outputs(&self) -> [BellLabel; 4] {
        BellLabel::ALL
    }

    pub fn rows(&self) -> &[[f64; 4]] {
        &self.rows
    }

    pub fn p(&self, x: BellLabel, y: BellLabel) -> Option<f64> {
        let i = self.inputs.iter().position(|&b| b == x)?;
        Some(self.rows[i][y.index()])
    }

    /// Largest entrywise difference to another table with the same inputs.
    pub fn max_abs_diff(&self, other: &ConditionalTable) -> f64 {
        assert_eq!(self.inputs, other.inputs);
        self.rows
            .iter()
            .zip(&other.rows)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }

    /// CSV with header `input,output,p`, one line per (x, y), 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("input,output,p\n");
        for (x, row) in self.inputs.iter().zip(&self.rows) {
            for y in BellLabel::ALL {
                writeln!(out, "{x},{y},{:.16e}", row[y.index()]).unwrap();
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "input,output,p" => {}
            other => return Err(Error::Parse(format!("bad header {other:?}"))),
        }
        let mut inputs: Vec<BellLabel> = Vec::new();
        let mut rows: Vec<[f64; 4]> = Vec::new();
        for (n, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected 3 fields", n + 2)));
            }
            let x: BellLabel = fields[0].parse()?;
            let y: BellLabel = fields[1].parse()?;
            let p: f64 = fields[2]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad probability `{}`", n + 2, fields[2])))?;
            let i = match inputs.iter().position(|&b| b == x) {
                Some(i) => i,
                None => {
                    inputs.push(x);
                    rows.push([0.0; 4]);
                    inputs.len() - 1
                }
            };
            rows[i][y.index()] = p;
        }
        Self::new(inputs, rows)
    }
}
