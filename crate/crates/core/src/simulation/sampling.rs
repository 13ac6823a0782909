use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};

fn check_scale(scale: f64) -> Result<()> {
    if scale.is_finite() && scale >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("scale must be finite and non-negative, got {scale}")))
    }
}

fn check_shape(n: usize, dim: usize) -> Result<()> {
    if n == 0 || dim == 0 {
        return Err(Error::InvalidParameter(format!("need n >= 1 and dim >= 1, got n = {n}, dim = {dim}")));
    }
    Ok(())
}

/// `n` i.i.d. draws from `N(mean, scale^2 I)`.
pub fn sample_gaussian(n: usize, dim: usize, mean: &[f64], scale: f64, seed: u64) -> Result<EmbeddingSet> {
    check_shape(n, dim)?;
    check_scale(scale)?;
    if mean.len() != dim {
        return Err(Error::DimensionMismatch { left: dim, right: mean.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n * dim);
    for _ in 0..n {
        for &m in mean {
            let z: f64 = rng.sample(StandardNormal);
            data.push(m + scale * z);
        }
    }
    EmbeddingSet::from_flat(data, n, dim)
}

/// `n` i.i.d. draws from the unit cube `[0, 1)^dim`.
pub fn sample_uniform_cube(n: usize, dim: usize, seed: u64) -> Result<EmbeddingSet> {
    check_shape(n, dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * dim).map(|_| rng.random::<f64>()).collect();
    EmbeddingSet::from_flat(data, n, dim)
}

/// Isotropic Gaussian mixture.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub means: Vec<Vec<f64>>,
    /// Per-component standard deviation.
    pub component_scale: f64,
    pub weights: Vec<f64>,
}

impl MixtureSpec {
    /// Equal-weight mixture whose mode `m` sits at `separation * e_m`.
    ///
    /// Modes are `separation * sqrt(2)` apart.
    pub fn separated_modes(n_modes: usize, dim: usize, separation: f64, component_scale: f64) -> Result<Self> {
        if n_modes == 0 || n_modes > dim {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= n_modes <= dim, got n_modes = {n_modes}, dim = {dim}"
            )));
        }
        let means = (0..n_modes)
            .map(|m| {
                let mut v = vec![0.0; dim];
                v[m] = separation;
                v
            })
            .collect();
        let spec = MixtureSpec { means, component_scale, weights: vec![1.0 / n_modes as f64; n_modes] };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        let spec = MixtureSpec { weights, ..self.clone() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.means.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        check_scale(self.component_scale)?;
        if self.means.is_empty() || self.dim() == 0 {
            return Err(Error::InvalidParameter("mixture needs at least one non-empty mean".into()));
        }
        if self.weights.len() != self.means.len() {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {} components",
                self.weights.len(),
                self.means.len()
            )));
        }
        if self.means.iter().any(|m| m.len() != self.dim() || m.iter().any(|v| !v.is_finite())) {
            return Err(Error::InvalidParameter("component means must be finite and share one dimension".into()));
        }
        if self.weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameter("weights must be finite and non-negative".into()));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("weights sum to {total}, expected 1")));
        }
        Ok(())
    }
}

/// Draws a component per sample by weight, then an isotropic normal around its mean.
pub fn sample_mixture(spec: &MixtureSpec, n: usize, seed: u64) -> Result<EmbeddingSet> {
    spec.validate()?;
    let dim = spec.dim();
    check_shape(n, dim)?;
    let picker = WeightedIndex::new(&spec.weights).map_err(|e| Error::InvalidParameter(format!("weights: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n * dim);
    for _ in 0..n {
        let mean = &spec.means[picker.sample(&mut rng)];
        for &m in mean {
            let z: f64 = rng.sample(StandardNormal);
            data.push(m + spec.component_scale * z);
        }
    }
    EmbeddingSet::from_flat(data, n, dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DropKind {
    /// Remove one mode per step.
    Sequential,
    /// Shift mass from every other mode onto the first one.
    Simultaneous,
}

/// Fake-distribution weight vectors, one per experiment step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DropSchedule {
    pub kind: DropKind,
    pub steps: Vec<Vec<f64>>,
}

impl DropSchedule {
    /// `n_modes` steps starting from equal weights and ending with all mass on mode 0.
    ///
    /// Sequential step `t` keeps the first `n_modes - t` modes at equal weight.
    /// Simultaneous step `t` puts `(t + 1) / n_modes` on mode 0 and splits the
    /// rest equally over the others.
    pub fn new(kind: DropKind, n_modes: usize) -> Result<Self> {
        if n_modes < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 modes, got {n_modes}")));
        }
        let steps = (0..n_modes)
            .map(|t| match kind {
                DropKind::Sequential => {
                    let kept = n_modes - t;
                    (0..n_modes).map(|m| if m < kept { 1.0 / kept as f64 } else { 0.0 }).collect()
                }
                DropKind::Simultaneous => {
                    let head = (t + 1) as f64 / n_modes as f64;
                    let rest = (1.0 - head) / (n_modes - 1) as f64;
                    (0..n_modes).map(|m| if m == 0 { head } else { rest }).collect()
                }
            })
            .collect();
        Ok(DropSchedule { kind, steps })
    }
}
