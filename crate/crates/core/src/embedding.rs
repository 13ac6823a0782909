//! Validated, immutable matrices of embedded samples.

use crate::error::{Error, Result};

/// An `n_samples x dim` matrix of finite feature vectors, stored row-major in
/// double precision.
///
/// Construction checks every entry, so downstream kernels never see NaN or
/// infinity. The set is immutable and `Sync`, so it can be shared freely
/// across worker threads.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingSet {
    data: Vec<f64>,
    n_samples: usize,
    dim: usize,
}

impl EmbeddingSet {
    /// Wraps a row-major buffer.
    pub fn from_flat(data: Vec<f64>, n_samples: usize, dim: usize) -> Result<Self> {
        if n_samples == 0 || dim == 0 {
            return Err(Error::Empty);
        }
        if n_samples.checked_mul(dim) != Some(data.len()) {
            return Err(Error::ShapeMismatch { len: data.len(), n_samples, dim });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: pos / dim, col: pos % dim, value: data[pos] });
        }
        Ok(EmbeddingSet { data, n_samples, dim })
    }

    /// Widens a single-precision row-major buffer.
    pub fn from_f32(data: &[f32], n_samples: usize, dim: usize) -> Result<Self> {
        Self::from_flat(data.iter().map(|&v| f64::from(v)).collect(), n_samples, dim)
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map(|r| r.as_ref().len()).ok_or(Error::Empty)?;
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(Error::Ragged { row, found: r.len(), expected: dim });
            }
            data.extend_from_slice(r);
        }
        Self::from_flat(data, rows.len(), dim)
    }

    /// One-dimensional points, handy for small hand-checked fixtures.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::from_flat(values.to_vec(), values.len(), 1)
    }

    #[inline]
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Builds a new set from the given rows, in order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            if i >= self.n_samples {
                return Err(Error::InvalidParameter(format!(
                    "row index {i} out of range for {} samples",
                    self.n_samples
                )));
            }
            data.extend_from_slice(self.row(i));
        }
        Self::from_flat(data, indices.len(), self.dim)
    }

    /// Returns a copy with row `i` replaced by `point`.
    pub fn with_row_replaced(&self, i: usize, point: &[f64]) -> Result<Self> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: point.len() });
        }
        if i >= self.n_samples {
            return Err(Error::InvalidParameter(format!("row index {i} out of range for {} samples", self.n_samples)));
        }
        let mut data = self.data.clone();
        data[i * self.dim..(i + 1) * self.dim].copy_from_slice(point);
        Self::from_flat(data, self.n_samples, self.dim)
    }

    /// Applies `x -> x + offset` to every row.
    pub fn translated(&self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: offset.len() });
        }
        let data = self.rows().flat_map(|r| r.iter().zip(offset).map(|(x, c)| x + c)).collect();
        Self::from_flat(data, self.n_samples, self.dim)
    }

    /// Concatenates the rows of `other` after the rows of `self`.
    pub fn concat(&self, other: &EmbeddingSet) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::from_flat(data, self.n_samples + other.n_samples, self.dim)
    }

    pub(crate) fn check_same_dim(&self, other: &EmbeddingSet) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }
}
