//! The matrix file format and rational formatting.
//!
//! A matrix file is UTF-8 text: lines starting with `#` (after optional
//! leading whitespace) and blank lines are ignored; every other line is
//! one row of space-separated nonnegative decimal integers, all rows of
//! equal length. Serialisation writes one row per line with single-space
//! separators and a trailing newline, so parse ∘ serialize is the
//! identity.

use std::fmt;
use std::str::FromStr;

use effalg_core::matrix::{MatrixError, MatrixRep};
use effalg_core::Rational;
use num_traits::{One, Signed};

/// A parse failure with 1-based line and column of the offending token.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FormatError {
    /// A token is not a nonnegative decimal integer.
    BadToken {
        line: usize,
        column: usize,
        token: String,
    },
    /// A row's length differs from the first row's.
    RaggedRow {
        line: usize,
        expected: usize,
        got: usize,
    },
    /// No rows at all.
    NoRows,
    /// Structurally impossible grid (duplicate or all-zero rows).
    Grid(MatrixError),
    /// A rational value failed to parse.
    BadRational { token: String },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::BadToken {
                line,
                column,
                token,
            } => {
                write!(
                    f,
                    "line {line}, column {column}: not a nonnegative integer: {token:?}"
                )
            }
            FormatError::RaggedRow {
                line,
                expected,
                got,
            } => {
                write!(f, "line {line}: expected {expected} entries, found {got}")
            }
            FormatError::NoRows => write!(f, "no rows in input"),
            FormatError::Grid(e) => write!(f, "{e}"),
            FormatError::BadRational { token } => {
                write!(f, "not a rational number: {token:?}")
            }
        }
    }
}

impl std::error::Error for FormatError {}

/// Parse a matrix file.
pub fn parse_matrix(text: &str) -> Result<MatrixRep, FormatError> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            match token.parse::<u32>() {
                Ok(v) => row.push(v),
                Err(_) => {
                    let column = raw.find(token).map_or(1, |p| p + 1);
                    return Err(FormatError::BadToken {
                        line: line_no,
                        column,
                        token: token.to_string(),
                    });
                }
            }
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(FormatError::RaggedRow {
                    line: line_no,
                    expected: w,
                    got: row.len(),
                })
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(FormatError::NoRows);
    }
    MatrixRep::from_entries(rows).map_err(FormatError::Grid)
}

/// One row per line, entries separated by single spaces, trailing newline.
pub fn serialize_matrix(m: &MatrixRep) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let mut first = true;
        for &e in row.entries() {
            if !first {
                out.push(' ');
            }
            out.push_str(&e.to_string());
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Render a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or a plain integer `p` into a rational.
pub fn parse_rational(token: &str) -> Result<Rational, FormatError> {
    let token = token.trim();
    let bad = || FormatError::BadRational {
        token: token.to_string(),
    };
    let parsed = Rational::from_str(token).map_err(|_| bad())?;
    // Ratio's FromStr accepts a missing denominator; reject junk like "" early.
    if token.is_empty() {
        return Err(bad());
    }
    Ok(parsed)
}

/// Parse a comma-separated list of rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, FormatError> {
    text.split(',').map(parse_rational).collect()
}

/// `true` for values usable as real-model entries: strictly between 0 and 1.
pub fn in_open_unit_interval(r: &Rational) -> bool {
    r.is_positive() && *r < Rational::one()
}
