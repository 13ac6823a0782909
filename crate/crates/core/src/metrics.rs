//! Precision, recall, density and coverage over k-NN ball manifolds.
//!
//! A sample `y` belongs to the ball of `x` when `|y - x| < NND_k(x)`, with a
//! **strict** inequality. On identical sets in general position this makes
//! every real ball contain exactly `k` fake points (its `k - 1` nearest
//! neighbours plus its own copy), so density is exactly 1. A non-strict rule
//! would give `(k + 1) / k`. Zero radii (duplicated points) yield empty balls.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingSet;
use crate::error::Result;
use crate::knn::{check_k, euclidean, kth_nn_radii, kth_nn_radii_multi, KnnConfig};

/// Default k for precision and recall.
pub const DEFAULT_K_PR: usize = 3;
/// Default k for density and coverage.
pub const DEFAULT_K_DC: usize = 5;

/// The nearest-neighbour counts used by [`Evaluator::prdc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricConfig {
    pub k_pr: usize,
    pub k_dc: usize,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig { k_pr: DEFAULT_K_PR, k_dc: DEFAULT_K_DC }
    }
}

impl MetricConfig {
    /// Same k for all four metrics.
    pub fn uniform(k: usize) -> Self {
        MetricConfig { k_pr: k, k_dc: k }
    }

    pub fn validate(&self, n_real: usize, n_fake: usize) -> Result<()> {
        check_k(self.k_pr, n_real)?;
        check_k(self.k_pr, n_fake)?;
        check_k(self.k_dc, n_real)
    }
}

/// Degenerate-input counters attached to a score record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Real samples whose `k_dc` ball has radius zero.
    pub zero_radius_real: usize,
    /// Fake samples whose `k_pr` ball has radius zero.
    pub zero_radius_fake: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrdcScores {
    pub precision: f64,
    pub recall: f64,
    /// Not bounded above by one.
    pub density: f64,
    pub coverage: f64,
    pub k_pr: usize,
    pub k_dc: usize,
    pub n_real: usize,
    pub n_fake: usize,
    #[serde(default)]
    pub diagnostics: Diagnostics,
}

impl PrdcScores {
    /// Element-wise mean of the four metric values. Counts are taken from the
    /// first record; diagnostics are summed.
    pub fn mean(records: &[PrdcScores]) -> Option<PrdcScores> {
        let first = *records.first()?;
        let n = records.len() as f64;
        let avg = |f: fn(&PrdcScores) -> f64| records.iter().map(f).sum::<f64>() / n;
        Some(PrdcScores {
            precision: avg(|s| s.precision),
            recall: avg(|s| s.recall),
            density: avg(|s| s.density),
            coverage: avg(|s| s.coverage),
            diagnostics: Diagnostics {
                zero_radius_real: records.iter().map(|s| s.diagnostics.zero_radius_real).sum(),
                zero_radius_fake: records.iter().map(|s| s.diagnostics.zero_radius_fake).sum(),
            },
            ..first
        })
    }
}

/// Membership counts of query points against a set of balls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct BallStats {
    /// Queries inside at least one ball.
    queries_inside: usize,
    /// Total (query, ball) containments.
    memberships: u64,
    /// Balls containing at least one query.
    balls_hit: usize,
}

/// Computes the metrics with a fixed tiling/threading configuration.
#[derive(Clone, Copy, Debug, Default)]
pub struct Evaluator {
    config: KnnConfig,
}

impl Evaluator {
    pub fn new(config: KnnConfig) -> Self {
        Evaluator { config }
    }

    pub fn config(&self) -> &KnnConfig {
        &self.config
    }

    /// Fraction of fake samples inside the real manifold.
    pub fn precision(&self, real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
        real.check_same_dim(fake)?;
        let radii = kth_nn_radii(real, k, &self.config)?;
        let stats = self.ball_stats(real, radii.as_slice(), fake);
        Ok(stats.queries_inside as f64 / fake.n_samples() as f64)
    }

    /// Fraction of real samples inside the fake manifold.
    pub fn recall(&self, real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
        self.precision(fake, real, k)
    }

    /// Mean number of real balls containing each fake sample, divided by `k`.
    pub fn density(&self, real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
        real.check_same_dim(fake)?;
        let radii = kth_nn_radii(real, k, &self.config)?;
        let stats = self.ball_stats(real, radii.as_slice(), fake);
        Ok(stats.memberships as f64 / (k as f64 * fake.n_samples() as f64))
    }

    /// Fraction of real balls containing at least one fake sample.
    pub fn coverage(&self, real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
        real.check_same_dim(fake)?;
        let radii = kth_nn_radii(real, k, &self.config)?;
        let stats = self.ball_stats(real, radii.as_slice(), fake);
        Ok(stats.balls_hit as f64 / real.n_samples() as f64)
    }

    /// All four metrics from one real-vs-fake distance pass.
    ///
    /// The values are bit-identical to the single-metric methods: all of them
    /// reduce to integer counts over the same distances.
    pub fn prdc(&self, real: &EmbeddingSet, fake: &EmbeddingSet, metric: MetricConfig) -> Result<PrdcScores> {
        real.check_same_dim(fake)?;
        metric.validate(real.n_samples(), fake.n_samples())?;
        let MetricConfig { k_pr, k_dc } = metric;

        let real_radii = kth_nn_radii_multi(real, &[k_pr, k_dc], &self.config)?;
        let (real_pr, real_dc) = (real_radii[0].as_slice(), real_radii[1].as_slice());
        let fake_radii = kth_nn_radii(fake, k_pr, &self.config)?;
        let fake_pr = fake_radii.as_slice();

        let n_real = real.n_samples();
        let n_fake = fake.n_samples();
        let block = self.config.block();

        struct Partial {
            precise: usize,
            memberships: u64,
            covered: Vec<bool>,
            recalled: Vec<bool>,
        }

        let partials: Vec<Partial> = self.config.install(|| {
            (0..n_fake.div_ceil(block))
                .into_par_iter()
                .map(|t| {
                    let mut p = Partial {
                        precise: 0,
                        memberships: 0,
                        covered: vec![false; n_real],
                        recalled: vec![false; n_real],
                    };
                    let (lo, hi) = (t * block, ((t + 1) * block).min(n_fake));
                    for (j, &fake_radius) in (lo..hi).zip(&fake_pr[lo..hi]) {
                        let y = fake.row(j);
                        let mut inside = false;
                        for i in 0..n_real {
                            let d = euclidean(y, real.row(i));
                            inside |= d < real_pr[i];
                            if d < real_dc[i] {
                                p.memberships += 1;
                                p.covered[i] = true;
                            }
                            if d < fake_radius {
                                p.recalled[i] = true;
                            }
                        }
                        p.precise += usize::from(inside);
                    }
                    p
                })
                .collect()
        });

        let mut precise = 0;
        let mut memberships = 0u64;
        let mut covered = vec![false; n_real];
        let mut recalled = vec![false; n_real];
        for p in partials {
            precise += p.precise;
            memberships += p.memberships;
            covered.iter_mut().zip(&p.covered).for_each(|(c, &x)| *c |= x);
            recalled.iter_mut().zip(&p.recalled).for_each(|(r, &x)| *r |= x);
        }
        let count = |v: &[bool]| v.iter().filter(|&&b| b).count();

        Ok(PrdcScores {
            precision: precise as f64 / n_fake as f64,
            recall: count(&recalled) as f64 / n_real as f64,
            density: memberships as f64 / (k_dc as f64 * n_fake as f64),
            coverage: count(&covered) as f64 / n_real as f64,
            k_pr,
            k_dc,
            n_real,
            n_fake,
            diagnostics: Diagnostics {
                zero_radius_real: real_radii[1].zero_count(),
                zero_radius_fake: fake_radii.zero_count(),
            },
        })
    }

    fn ball_stats(&self, centers: &EmbeddingSet, radii: &[f64], queries: &EmbeddingSet) -> BallStats {
        let n_centers = centers.n_samples();
        let block = self.config.block();
        let partials: Vec<(usize, u64, Vec<bool>)> = self.config.install(|| {
            (0..queries.n_samples().div_ceil(block))
                .into_par_iter()
                .map(|t| {
                    let mut inside_count = 0;
                    let mut memberships = 0u64;
                    let mut hit = vec![false; n_centers];
                    for j in t * block..((t + 1) * block).min(queries.n_samples()) {
                        let q = queries.row(j);
                        let mut inside = false;
                        for (i, (c, &r)) in centers.rows().zip(radii).enumerate() {
                            if euclidean(q, c) < r {
                                inside = true;
                                memberships += 1;
                                hit[i] = true;
                            }
                        }
                        inside_count += usize::from(inside);
                    }
                    (inside_count, memberships, hit)
                })
                .collect()
        });
        let mut stats = BallStats::default();
        let mut hit = vec![false; n_centers];
        for (inside, m, h) in partials {
            stats.queries_inside += inside;
            stats.memberships += m;
            hit.iter_mut().zip(&h).for_each(|(a, &b)| *a |= b);
        }
        stats.balls_hit = hit.iter().filter(|&&b| b).count();
        stats
    }
}

pub fn compute_precision(real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
    Evaluator::default().precision(real, fake, k)
}

pub fn compute_recall(real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
    Evaluator::default().recall(real, fake, k)
}

pub fn compute_density(real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
    Evaluator::default().density(real, fake, k)
}

pub fn compute_coverage(real: &EmbeddingSet, fake: &EmbeddingSet, k: usize) -> Result<f64> {
    Evaluator::default().coverage(real, fake, k)
}

/// All four metrics with separate k for precision/recall and density/coverage.
pub fn compute_prdc(real: &EmbeddingSet, fake: &EmbeddingSet, k_pr: usize, k_dc: usize) -> Result<PrdcScores> {
    Evaluator::default().prdc(real, fake, MetricConfig { k_pr, k_dc })
}
