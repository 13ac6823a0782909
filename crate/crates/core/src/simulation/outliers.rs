use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};
use crate::knn::{kth_nn_radii, KnnConfig};

/// Default inlier-to-outlier ratio.
pub const DEFAULT_INLIER_RATIO: usize = 10;

/// Partition of a sample set by within-set k-NN distance.
#[derive(Clone, Debug, PartialEq)]
pub struct OutlierSplit {
    pub inliers: EmbeddingSet,
    pub outliers: EmbeddingSet,
    /// Original row indices, ascending.
    pub inlier_indices: Vec<usize>,
    /// Original row indices, most isolated first.
    pub outlier_indices: Vec<usize>,
    /// k-NN radius of every input row.
    pub radii: Vec<f64>,
}

/// Marks the `ceil(n / (ratio + 1))` samples with the largest k-NN distance
/// as outliers. Ties go to the lower index.
pub fn split_outliers(samples: &EmbeddingSet, k: usize, ratio: usize, config: &KnnConfig) -> Result<OutlierSplit> {
    if ratio == 0 {
        return Err(Error::InvalidParameter("inlier-to-outlier ratio must be at least 1".into()));
    }
    let radii = kth_nn_radii(samples, k, config)?.into_vec();
    let n = samples.n_samples();
    let n_out = n.div_ceil(ratio + 1);

    let mut ranked: Vec<usize> = (0..n).collect();
    // Stable sort keeps index order among equal radii.
    ranked.sort_by(|&a, &b| radii[b].total_cmp(&radii[a]));
    let outlier_indices = ranked[..n_out].to_vec();
    let mut inlier_indices = ranked[n_out..].to_vec();
    inlier_indices.sort_unstable();

    Ok(OutlierSplit {
        inliers: samples.select(&inlier_indices)?,
        outliers: samples.select(&outlier_indices)?,
        inlier_indices,
        outlier_indices,
        radii,
    })
}
