use super::Precision;
use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};

const HEADER_LEN: usize = 16;

/// Parses the raw layout: `u64 n_samples`, `u64 dim`, then row-major values,
/// all little-endian.
pub fn read_raw(bytes: &[u8], precision: Precision) -> Result<EmbeddingSet> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Malformed(format!("raw header needs {HEADER_LEN} bytes, file has {}", bytes.len())));
    }
    let word = |i: usize| u64::from_le_bytes(bytes[i * 8..i * 8 + 8].try_into().expect("8 bytes"));
    let (n_samples, dim) = (word(0), word(1));
    let width = match precision {
        Precision::F32 => 4u64,
        Precision::F64 => 8,
    };
    let payload = (bytes.len() - HEADER_LEN) as u64;
    let expected = n_samples
        .checked_mul(dim)
        .and_then(|c| c.checked_mul(width))
        .ok_or_else(|| Error::Malformed(format!("raw header shape {n_samples}x{dim} overflows")))?;
    if expected != payload {
        return Err(Error::Malformed(format!(
            "raw header declares {n_samples}x{dim} values ({expected} bytes) but payload has {payload} bytes"
        )));
    }
    let body = &bytes[HEADER_LEN..];
    let data: Vec<f64> = match precision {
        Precision::F32 => {
            body.chunks_exact(4).map(|c| f64::from(f32::from_le_bytes(c.try_into().expect("4 bytes")))).collect()
        }
        Precision::F64 => body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect(),
    };
    EmbeddingSet::from_flat(data, n_samples as usize, dim as usize)
}

/// Serializes in the raw layout. `F32` output rounds each value.
pub fn write_raw(set: &EmbeddingSet, precision: Precision) -> Vec<u8> {
    let width = match precision {
        Precision::F32 => 4,
        Precision::F64 => 8,
    };
    let mut out = Vec::with_capacity(HEADER_LEN + set.as_slice().len() * width);
    out.extend_from_slice(&(set.n_samples() as u64).to_le_bytes());
    out.extend_from_slice(&(set.dim() as u64).to_le_bytes());
    for &v in set.as_slice() {
        match precision {
            Precision::F32 => out.extend_from_slice(&(v as f32).to_le_bytes()),
            Precision::F64 => out.extend_from_slice(&v.to_le_bytes()),
        }
    }
    out
}
