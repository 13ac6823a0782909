//! Embedding file formats and score serialization.
//!
//! Readers accept:
//!
//! * `csv`: one sample per line, comma separated. An optional first line of
//!   non-numeric column names is skipped; blank lines and `#` comments too.
//! * `raw-f32` / `raw-f64`: two little-endian `u64` (`n_samples`, `dim`)
//!   followed by exactly `n_samples * dim` little-endian floats, row-major.
//! * `npy`: version 1.0, 2-D, C-order, little-endian `<f4` or `<f8` only.
//!
//! Every value is widened to `f64` and checked for finiteness.

mod csv;
mod npy;
mod raw;

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};
use crate::metrics::PrdcScores;

pub use self::csv::{read_csv, write_csv};
pub use self::npy::{read_npy, write_npy};
pub use self::raw::{read_raw, write_raw};

/// Storage precision of the binary formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    F32,
    F64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingFormat {
    Csv,
    Raw(Precision),
    Npy(Precision),
}

impl EmbeddingFormat {
    /// Guesses the format from a file extension.
    ///
    /// `.csv`, `.npy`, `.f32`, and `.f64` / `.raw` / `.bin` (raw doubles).
    /// `.npy` files carry their own precision; the one returned here is only
    /// used when writing.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "csv" | "txt" => Some(EmbeddingFormat::Csv),
            "npy" => Some(EmbeddingFormat::Npy(Precision::F64)),
            "f32" => Some(EmbeddingFormat::Raw(Precision::F32)),
            "f64" | "raw" | "bin" => Some(EmbeddingFormat::Raw(Precision::F64)),
            _ => None,
        }
    }
}

impl FromStr for EmbeddingFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(EmbeddingFormat::Csv),
            "raw-f32" | "raw_f32" => Ok(EmbeddingFormat::Raw(Precision::F32)),
            "raw-f64" | "raw_f64" | "raw" => Ok(EmbeddingFormat::Raw(Precision::F64)),
            "npy" | "npy-f64" => Ok(EmbeddingFormat::Npy(Precision::F64)),
            "npy-f32" => Ok(EmbeddingFormat::Npy(Precision::F32)),
            other => Err(Error::InvalidParameter(format!("unknown embedding format `{other}`"))),
        }
    }
}

impl fmt::Display for EmbeddingFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingFormat::Csv => "csv",
            EmbeddingFormat::Raw(Precision::F32) => "raw-f32",
            EmbeddingFormat::Raw(Precision::F64) => "raw-f64",
            EmbeddingFormat::Npy(Precision::F32) => "npy-f32",
            EmbeddingFormat::Npy(Precision::F64) => "npy",
        })
    }
}

fn resolve(path: &Path, format: Option<EmbeddingFormat>) -> Result<EmbeddingFormat> {
    format.or_else(|| EmbeddingFormat::from_path(path)).ok_or_else(|| Error::Load {
        path: path.to_path_buf(),
        reason: "cannot infer the embedding format from the file extension".into(),
    })
}

/// Reads an embedding file; `None` picks the format by extension.
pub fn load_embeddings(path: impl AsRef<Path>, format: Option<EmbeddingFormat>) -> Result<EmbeddingSet> {
    let path = path.as_ref();
    let format = resolve(path, format)?;
    let bytes = fs::read(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let parsed = match format {
        EmbeddingFormat::Csv => {
            std::str::from_utf8(&bytes).map_err(|e| Error::Malformed(format!("not UTF-8 text: {e}"))).and_then(read_csv)
        }
        EmbeddingFormat::Raw(p) => read_raw(&bytes, p),
        EmbeddingFormat::Npy(_) => read_npy(&bytes),
    };
    parsed.map_err(|e| e.at_path(path))
}

/// Writes an embedding file; `None` picks the format by extension.
pub fn write_embeddings(path: impl AsRef<Path>, set: &EmbeddingSet, format: Option<EmbeddingFormat>) -> Result<()> {
    let path = path.as_ref();
    let bytes = match resolve(path, format)? {
        EmbeddingFormat::Csv => write_csv(set).into_bytes(),
        EmbeddingFormat::Raw(p) => write_raw(set, p),
        EmbeddingFormat::Npy(p) => write_npy(set, p),
    };
    fs::write(path, bytes).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Output encoding of a score record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoreFormat {
    Json,
    Csv,
}

/// Single-line JSON object with the fixed field set. Metric values carry six
/// decimals.
pub fn scores_to_json(s: &PrdcScores) -> String {
    format!(
        "{{\"precision\":{:.6},\"recall\":{:.6},\"density\":{:.6},\"coverage\":{:.6},\
         \"k_pr\":{},\"k_dc\":{},\"n_real\":{},\"n_fake\":{}}}",
        s.precision, s.recall, s.density, s.coverage, s.k_pr, s.k_dc, s.n_real, s.n_fake
    )
}

/// Header line plus one data line.
pub fn scores_to_csv(s: &PrdcScores) -> String {
    format!(
        "precision,recall,density,coverage,k_pr,k_dc,n_real,n_fake\n{:.6},{:.6},{:.6},{:.6},{},{},{},{}",
        s.precision, s.recall, s.density, s.coverage, s.k_pr, s.k_dc, s.n_real, s.n_fake
    )
}

pub fn format_scores(s: &PrdcScores, format: ScoreFormat) -> String {
    match format {
        ScoreFormat::Json => scores_to_json(s),
        ScoreFormat::Csv => scores_to_csv(s),
    }
}
