use std::fmt::Write as _;

use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};

/// Parses comma-separated rows.
pub fn read_csv(text: &str) -> Result<EmbeddingSet> {
    let mut data = Vec::new();
    let mut dim = None;
    let mut row = 0usize;
    let mut seen_content = false;
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if !seen_content {
            seen_content = true;
            if fields.iter().all(|f| f.parse::<f64>().is_err()) {
                continue;
            }
        }
        let expected = *dim.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(Error::Ragged { row, found: fields.len(), expected });
        }
        for (col, f) in fields.iter().enumerate() {
            let v: f64 = f.parse().map_err(|_| {
                Error::Malformed(format!(
                    "line {}: cannot parse `{f}` as a number (row {row}, column {col})",
                    line_no + 1
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::NonFinite { row, col, value: v });
            }
            data.push(v);
        }
        row += 1;
    }
    let dim = dim.ok_or(Error::Empty)?;
    EmbeddingSet::from_flat(data, row, dim)
}

/// One line per row, shortest round-trip decimal representation.
pub fn write_csv(set: &EmbeddingSet) -> String {
    let mut out = String::new();
    for r in set.rows() {
        for (i, v) in r.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v:?}");
        }
        out.push('\n');
    }
    out
}
