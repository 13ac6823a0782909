use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the metric kernels, the analytic helpers and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("embedding set is empty (need at least one row and one column)")]
    Empty,

    #[error("buffer of {len} values does not match shape {n_samples}x{dim}")]
    ShapeMismatch { len: usize, n_samples: usize, dim: usize },

    #[error("ragged rows: row {row} has {found} values, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },

    #[error("non-finite value {value} at row {row}, column {col}")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("k = {k} is out of range for a set of {n_samples} samples (need 1 <= k <= n_samples - 1)")]
    InvalidK { k: usize, n_samples: usize },

    #[error("no k < {n_real} reaches expected coverage above {target} (best is {best} at k = {best_k})")]
    NoSatisfyingK { n_real: u64, target: f64, best: f64, best_k: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {reason}", path.display())]
    Load { path: PathBuf, reason: String },
}

/// Coarse failure classes, mirrored by the CLI exit codes and the C status codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad or unreadable input data.
    Data,
    /// A numeric argument outside its valid range.
    Parameter,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidK { .. } | Error::NoSatisfyingK { .. } | Error::InvalidParameter(_) => ErrorClass::Parameter,
            _ => ErrorClass::Data,
        }
    }

    pub(crate) fn at_path(self, path: impl Into<PathBuf>) -> Error {
        match self {
            e @ (Error::Io { .. } | Error::Load { .. }) => e,
            other => Error::Load { path: path.into(), reason: other.to_string() },
        }
    }
}
