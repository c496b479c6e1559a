//! Plain-text density matrix format.
//!
//! Four lines of four whitespace-separated entries in (HH, HV, VH, VV)
//! order. Each entry is written as `re±imj` with 17 significant digits,
//! e.g. `5.0000000000000000e-1+0.0000000000000000e0j`.

use std::fmt::Write as _;

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::density::DensityMatrix;
use crate::error::{Error, Result};

pub fn format_complex(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}j", z.re, z.im)
}

pub fn parse_complex(token: &str) -> Result<Complex64> {
    let err = || Error::Parse(format!("malformed complex entry `{token}`"));
    let body = token.strip_suffix('j').ok_or_else(err)?;
    // The imaginary part starts at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(err)?;
    let re: f64 = body[..split].parse().map_err(|_| err())?;
    let im: f64 = body[split..].parse().map_err(|_| err())?;
    Ok(Complex64::new(re, im))
}

impl DensityMatrix {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..4 {
            let row: Vec<String> = (0..4).map(|c| format_complex(self.get(r, c))).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }

    /// Parses the text format and validates the result.
    pub fn from_text(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if rows.len() != 4 {
            return Err(Error::Parse(format!("expected 4 rows, found {}", rows.len())));
        }
        let mut m = Matrix4::zeros();
        for (r, line) in rows.iter().enumerate() {
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != 4 {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected 4",
                    r + 1,
                    entries.len()
                )));
            }
            for (c, tok) in entries.iter().enumerate() {
                m[(r, c)] = parse_complex(tok)?;
            }
        }
        DensityMatrix::new(m)
    }
}
