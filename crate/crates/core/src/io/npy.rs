//! The subset of the `.npy` format this crate exchanges: version 1.0, 2-D,
//! C-order, little-endian `f4`/`f8`. Anything else is reported by name.

use super::Precision;
use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};

const MAGIC: &[u8; 6] = b"\x93NUMPY";
const PREAMBLE: usize = 10;
const ALIGN: usize = 64;

struct Header {
    precision: Precision,
    fortran_order: bool,
    shape: Vec<u64>,
}

fn unsupported(what: impl Into<String>) -> Error {
    Error::Malformed(format!("unsupported npy feature: {}", what.into()))
}

fn parse_header(dict: &str) -> Result<Header> {
    let body = dict
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.trim_end().strip_suffix('}'))
        .ok_or_else(|| Error::Malformed("npy header is not a dict literal".into()))?;

    let mut descr = None;
    let mut fortran_order = None;
    let mut shape = None;
    let mut rest = body.trim();
    while !rest.is_empty() {
        let quote = rest.chars().next().filter(|c| *c == '\'' || *c == '"');
        let quote = quote.ok_or_else(|| Error::Malformed(format!("npy header: expected a quoted key at `{rest}`")))?;
        let end = rest[1..].find(quote).ok_or_else(|| Error::Malformed("npy header: unterminated key".into()))?;
        let key = &rest[1..1 + end];
        rest = rest[end + 2..].trim_start();
        rest = rest
            .strip_prefix(':')
            .ok_or_else(|| Error::Malformed(format!("npy header: missing `:` after `{key}`")))?
            .trim_start();
        let value_end = if rest.starts_with('(') {
            rest.find(')').map(|i| i + 1)
        } else if rest.starts_with('\'') || rest.starts_with('"') {
            let q = rest.as_bytes()[0] as char;
            rest[1..].find(q).map(|i| i + 2)
        } else {
            Some(rest.find(',').unwrap_or(rest.len()))
        }
        .ok_or_else(|| Error::Malformed(format!("npy header: unterminated value for `{key}`")))?;
        let value = rest[..value_end].trim();
        match key {
            "descr" => descr = Some(value.trim_matches(|c| c == '\'' || c == '"').to_string()),
            "fortran_order" => {
                fortran_order = Some(match value {
                    "True" => true,
                    "False" => false,
                    other => return Err(Error::Malformed(format!("npy header: fortran_order = {other}"))),
                })
            }
            "shape" => {
                let inner = value.trim_start_matches('(').trim_end_matches(')');
                let dims: std::result::Result<Vec<u64>, _> =
                    inner.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect();
                shape = Some(dims.map_err(|_| Error::Malformed(format!("npy header: bad shape {value}")))?);
            }
            _ => {}
        }
        rest = rest[value_end..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }

    let descr = descr.ok_or_else(|| Error::Malformed("npy header: missing descr".into()))?;
    let precision = match descr.as_str() {
        "<f4" => Precision::F32,
        "<f8" => Precision::F64,
        ">f4" | ">f8" => return Err(unsupported("big-endian data")),
        other => return Err(unsupported(format!("dtype {other}"))),
    };
    Ok(Header {
        precision,
        fortran_order: fortran_order.ok_or_else(|| Error::Malformed("npy header: missing fortran_order".into()))?,
        shape: shape.ok_or_else(|| Error::Malformed("npy header: missing shape".into()))?,
    })
}

pub fn read_npy(bytes: &[u8]) -> Result<EmbeddingSet> {
    if bytes.len() < PREAMBLE || &bytes[..6] != MAGIC {
        return Err(Error::Malformed("not an npy file (bad magic)".into()));
    }
    let (major, minor) = (bytes[6], bytes[7]);
    if (major, minor) != (1, 0) {
        return Err(unsupported(format!("format version {major}.{minor}")));
    }
    let header_len = u16::from_le_bytes([bytes[8], bytes[9]]) as usize;
    let data_start = PREAMBLE + header_len;
    if bytes.len() < data_start {
        return Err(Error::Malformed("npy header is truncated".into()));
    }
    let dict = std::str::from_utf8(&bytes[PREAMBLE..data_start])
        .map_err(|_| Error::Malformed("npy header is not ASCII".into()))?;
    let header = parse_header(dict)?;
    if header.fortran_order {
        return Err(unsupported("Fortran order"));
    }
    let [n_samples, dim] = header.shape[..] else {
        return Err(unsupported(format!("{}-D array (only 2-D is read)", header.shape.len())));
    };
    let width = match header.precision {
        Precision::F32 => 4,
        Precision::F64 => 8,
    };
    let payload = (bytes.len() - data_start) as u64;
    let expected = n_samples
        .checked_mul(dim)
        .and_then(|c| c.checked_mul(width))
        .ok_or_else(|| Error::Malformed("npy shape overflows".into()))?;
    if payload != expected {
        return Err(Error::Malformed(format!(
            "npy shape ({n_samples}, {dim}) needs {expected} bytes but payload has {payload}"
        )));
    }
    let body = &bytes[data_start..];
    let data = match header.precision {
        Precision::F32 => {
            body.chunks_exact(4).map(|c| f64::from(f32::from_le_bytes(c.try_into().expect("4 bytes")))).collect()
        }
        Precision::F64 => body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect(),
    };
    EmbeddingSet::from_flat(data, n_samples as usize, dim as usize)
}

pub fn write_npy(set: &EmbeddingSet, precision: Precision) -> Vec<u8> {
    let descr = match precision {
        Precision::F32 => "<f4",
        Precision::F64 => "<f8",
    };
    let mut dict =
        format!("{{'descr': '{descr}', 'fortran_order': False, 'shape': ({}, {}), }}", set.n_samples(), set.dim());
    // Pad with spaces so the data starts on an aligned offset; the header ends in '\n'.
    let unpadded = PREAMBLE + dict.len() + 1;
    dict.extend(std::iter::repeat_n(' ', (ALIGN - unpadded % ALIGN) % ALIGN));
    dict.push('\n');

    let mut out = Vec::with_capacity(PREAMBLE + dict.len() + set.as_slice().len() * 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&[1, 0]);
    out.extend_from_slice(&(dict.len() as u16).to_le_bytes());
    out.extend_from_slice(dict.as_bytes());
    for &v in set.as_slice() {
        match precision {
            Precision::F32 => out.extend_from_slice(&(v as f32).to_le_bytes()),
            Precision::F64 => out.extend_from_slice(&v.to_le_bytes()),
        }
    }
    out
}
