//! Plain-text complex matrix files.
//!
//! One matrix row per line, entries separated by whitespace. Each entry is a
//! decimal real `a`, or a complex number written `a+bi` / `a-bi` (a bare
//! imaginary `bi` is accepted too). Blank lines and lines whose first
//! non-blank character is `#` are ignored.
//!
//! ```text
//! # 2x2 Hermitian
//! 1        0.5+0.1i
//! 0.5-0.1i 1
//! ```

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

pub fn parse_complex(token: &str) -> Option<Complex64> {
    let token = token.trim();
    let Some(body) = token.strip_suffix(['i', 'j']) else {
        return token.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().ok()?, parse_imag(&body[k..])?),
        None => (0.0, parse_imag(body)?),
    };
    Some(Complex64::new(re, im))
}

fn parse_imag(text: &str) -> Option<f64> {
    match text {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => text.parse().ok(),
    }
}

pub fn parse_complex_matrix(text: &str) -> Result<CMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                parse_complex(tok).ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    message: format!("malformed matrix entry `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "matrix file contains no rows".into(),
        });
    }
    if rows[0].len() != n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, expected square",
            n,
            rows[0].len()
        )));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn read_complex_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_complex_matrix(&text)
}

/// Inverse of [`parse_complex_matrix`]; entries use round-trip precision.
pub fn format_complex_matrix(m: &CMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m[(i, j)];
                if z.im == 0.0 {
                    format!("{:?}", z.re)
                } else if z.im.is_sign_negative() {
                    format!("{:?}-{:?}i", z.re, -z.im)
                } else {
                    format!("{:?}+{:?}i", z.re, z.im)
                }
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
