//! Exact brute-force Euclidean distances and k-th nearest neighbour radii.
//!
//! Everything here is a pure function of its inputs. Work is split into tiles
//! of query rows; tiles run on a rayon pool whose size comes from
//! [`KnnConfig::threads`]. Results never depend on the worker count because
//! every output element is computed by exactly one tile with a fixed
//! summation order.

use rayon::prelude::*;

use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};

/// Default number of query rows per tile.
pub const DEFAULT_BLOCK_SIZE: usize = 1024;

/// Tiling and threading knobs for the brute-force kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnnConfig {
    /// Query rows per tile. Scratch memory is `block_size x n_reference` doubles.
    pub block_size: usize,
    /// Worker threads; `0` uses the ambient rayon pool.
    pub threads: usize,
}

impl Default for KnnConfig {
    fn default() -> Self {
        KnnConfig { block_size: DEFAULT_BLOCK_SIZE, threads: 0 }
    }
}

impl KnnConfig {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_block_size(mut self, block_size: usize) -> Self {
        self.block_size = block_size;
        self
    }

    pub(crate) fn block(&self) -> usize {
        self.block_size.max(1)
    }

    /// Runs `f` inside a pool of the configured size.
    pub fn install<R, F>(&self, f: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        if self.threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            // Thread spawn failure: fall back to the ambient pool, output is identical.
            Err(_) => f(),
        }
    }
}

/// Euclidean distance with squared differences accumulated in eight
/// fixed lanes.
///
/// The function is exactly symmetric: `euclidean(a, b) == euclidean(b, a)`
/// bit for bit, since `(x - y)^2 == (y - x)^2` in IEEE arithmetic and the
/// summation order only depends on the coordinate index.
#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    const LANES: usize = 8;
    let mut acc = [0.0f64; LANES];
    let ca = a.chunks_exact(LANES);
    let cb = b.chunks_exact(LANES);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        for l in 0..LANES {
            let d = x[l] - y[l];
            acc[l] += d * d;
        }
    }
    let mut tail = 0.0;
    for (x, y) in ra.iter().zip(rb) {
        let d = x - y;
        tail += d * d;
    }
    let sum = ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
    sum.sqrt()
}

/// Dense `rows x cols` matrix of Euclidean distances.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    values: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl DistanceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// All distances between rows of `a` and rows of `b`.
pub fn pairwise_distances(a: &EmbeddingSet, b: &EmbeddingSet, config: &KnnConfig) -> Result<DistanceMatrix> {
    a.check_same_dim(b)?;
    let (rows, cols) = (a.n_samples(), b.n_samples());
    let mut values = vec![0.0; rows * cols];
    let tile = config.block() * cols;
    config.install(|| {
        values.par_chunks_mut(tile).enumerate().for_each(|(t, out)| {
            let first = t * config.block();
            for (r, out_row) in out.chunks_exact_mut(cols).enumerate() {
                let q = a.row(first + r);
                for (j, slot) in out_row.iter_mut().enumerate() {
                    *slot = euclidean(q, b.row(j));
                }
            }
        })
    });
    Ok(DistanceMatrix { values, rows, cols })
}

/// Per-sample k-th nearest neighbour distances within one set.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborRadii {
    radii: Vec<f64>,
    k: usize,
}

impl NeighborRadii {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.radii
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Number of zero radii, i.e. samples with at least `k` exact duplicates.
    pub fn zero_count(&self) -> usize {
        self.radii.iter().filter(|&&r| r == 0.0).count()
    }
}

pub(crate) fn check_k(k: usize, n_samples: usize) -> Result<()> {
    if k == 0 || k >= n_samples {
        Err(Error::InvalidK { k, n_samples })
    } else {
        Ok(())
    }
}

/// Distance from every row to its k-th nearest other row (self excluded).
pub fn kth_nn_radii(a: &EmbeddingSet, k: usize, config: &KnnConfig) -> Result<NeighborRadii> {
    let mut out = kth_nn_radii_multi(a, &[k], config)?;
    Ok(out.pop().expect("one k requested"))
}

/// Like [`kth_nn_radii`] for several `k` at once, sharing the distance pass.
///
/// Results are returned in the order of `ks`.
pub fn kth_nn_radii_multi(a: &EmbeddingSet, ks: &[usize], config: &KnnConfig) -> Result<Vec<NeighborRadii>> {
    let n = a.n_samples();
    for &k in ks {
        check_k(k, n)?;
    }
    if ks.is_empty() {
        return Ok(Vec::new());
    }
    // Largest k first: after selecting it, every smaller order statistic sits
    // in the prefix, so the next selection only scans k values.
    let mut order: Vec<usize> = (0..ks.len()).collect();
    order.sort_by(|&x, &y| ks[y].cmp(&ks[x]));

    let block = config.block();
    let mut table = vec![0.0; n * ks.len()];
    config.install(|| {
        table.par_chunks_mut(block * ks.len()).enumerate().for_each(|(t, out)| {
            let mut scratch = Vec::with_capacity(n - 1);
            let first = t * block;
            for (r, out_row) in out.chunks_exact_mut(ks.len()).enumerate() {
                let i = first + r;
                let q = a.row(i);
                scratch.clear();
                scratch.extend((0..n).filter(|&j| j != i).map(|j| euclidean(q, a.row(j))));
                let mut prefix = scratch.len();
                for &slot in &order {
                    let k = ks[slot];
                    let (_, kth, _) = scratch[..prefix].select_nth_unstable_by(k - 1, f64::total_cmp);
                    out_row[slot] = *kth;
                    prefix = k;
                }
            }
        })
    });
    Ok((0..ks.len())
        .map(|slot| NeighborRadii { radii: table.iter().skip(slot).step_by(ks.len()).copied().collect(), k: ks[slot] })
        .collect())
}
