//! Plain-text dense matrix format.
//!
//! ```text
//! 2 3 real
//! 1 0 2.5
//! 0 1 -1
//! ```
//!
//! The header is `rows cols [real|complex]`; complex entries are single
//! tokens such as `1.5-2e-3j`. Values are printed with 17 significant digits,
//! which round-trips every `f64` exactly.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::ScalarKind;

/// A matrix whose scalar kind is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum DenseMatrix {
    Real(Matrix<f64>),
    Complex(Matrix<Complex64>),
}

impl DenseMatrix {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Self::Real(_) => ScalarKind::Real,
            Self::Complex(_) => ScalarKind::Complex,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            Self::Real(m) => m.shape(),
            Self::Complex(m) => m.shape(),
        }
    }
}

impl From<Matrix<f64>> for DenseMatrix {
    fn from(m: Matrix<f64>) -> Self {
        Self::Real(m)
    }
}

impl From<Matrix<Complex64>> for DenseMatrix {
    fn from(m: Matrix<Complex64>) -> Self {
        Self::Complex(m)
    }
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 3 {
        return Err(Error::Parse(format!("bad header `{header}`")));
    }
    let rows: usize = fields[0]
        .parse()
        .map_err(|_| Error::Parse(format!("bad row count `{}`", fields[0])))?;
    let cols: usize = fields[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad column count `{}`", fields[1])))?;
    let kind = match fields.get(2).copied() {
        None | Some("real") => ScalarKind::Real,
        Some("complex") => ScalarKind::Complex,
        Some(other) => return Err(Error::Parse(format!("unknown scalar kind `{other}`"))),
    };

    let mut tokens: Vec<&str> = Vec::with_capacity(rows * cols);
    for (i, line) in lines.enumerate() {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        tokens.extend(row);
    }
    if tokens.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {rows} rows, found {}",
            tokens.len() / cols.max(1)
        )));
    }

    let out = match kind {
        ScalarKind::Real => {
            let data = tokens.iter().map(|t| parse_real(t)).collect::<Result<Vec<_>>>()?;
            DenseMatrix::Real(Matrix::new(rows, cols, data)?)
        }
        ScalarKind::Complex => {
            let data = tokens
                .iter()
                .map(|t| parse_complex(t))
                .collect::<Result<Vec<_>>>()?;
            DenseMatrix::Complex(Matrix::new(rows, cols, data)?)
        }
    };
    Ok(out)
}

fn parse_real(tok: &str) -> Result<f64> {
    let x: f64 = tok
        .parse()
        .map_err(|_| Error::Parse(format!("bad number `{tok}`")))?;
    if !x.is_finite() {
        return Err(Error::Parse(format!("non-finite entry `{tok}`")));
    }
    Ok(x)
}

fn parse_complex(tok: &str) -> Result<Complex64> {
    let Some(body) = tok.strip_suffix('j') else {
        return Ok(Complex64::new(parse_real(tok)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => Ok(Complex64::new(parse_real(&body[..i])?, parse_real(&body[i..])?)),
        None => Ok(Complex64::new(0.0, parse_real(body)?)),
    }
}

pub fn format_matrix(m: &DenseMatrix) -> String {
    let mut out = String::new();
    match m {
        DenseMatrix::Real(a) => {
            let _ = writeln!(out, "{} {} real", a.rows(), a.cols());
            for i in 0..a.rows() {
                let row: Vec<String> = a.row(i).iter().map(|x| format!("{x:.16e}")).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        DenseMatrix::Complex(a) => {
            let _ = writeln!(out, "{} {} complex", a.rows(), a.cols());
            for i in 0..a.rows() {
                let row: Vec<String> = a
                    .row(i)
                    .iter()
                    .map(|z| {
                        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                        format!("{:.16e}{sign}{:.16e}j", z.re, z.im.abs())
                    })
                    .collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
    }
    out
}
