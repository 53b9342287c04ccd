//! Plain-text generator-matrix format.
//!
//! ```text
//! # optional comment lines
//! 110
//! 011
//! ```
//!
//! One generator row per line as `0`/`1` characters, all rows the same
//! length. Blank lines and lines starting with `#` are ignored. A zero code
//! of positive length is written as a single all-zero row so that its length
//! survives a round trip.

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

pub fn parse_generator(text: &str) -> Result<LinearCode> {
    let mut rows: Vec<BitVec> = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        let mut row = BitVec::zeros(trimmed.chars().count());
        for (i, ch) in trimmed.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => row.set(i, true),
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: lead + i + 1,
                        message: format!("unexpected character {other:?}, expected '0' or '1'"),
                    })
                }
            }
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    column: lead + w.min(row.len()) + 1,
                    message: format!("row has length {}, expected {w}", row.len()),
                })
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    let n = width.unwrap_or(0);
    Ok(LinearCode::from_matrix(&BitMatrix::from_rows(&rows, n)?))
}

pub fn write_generator(code: &LinearCode, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    if code.dimension() == 0 && !code.is_empty() {
        out.push_str(&"0".repeat(code.len()));
        out.push('\n');
    }
    for row in code.generator().row_vecs() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}
