use serde::{Deserialize, Serialize};

use super::child_seed;
use super::sampling::{sample_gaussian, sample_mixture, DropKind, DropSchedule, MixtureSpec};
use super::table::{MetricSpread, ScoreRow, ScoreTable};
use crate::analytic::expected_coverage;
use crate::error::{Error, Result};
use crate::knn::KnnConfig;
use crate::metrics::{Evaluator, MetricConfig, PrdcScores};

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        Err(Error::InvalidParameter("trials must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn row(params: Vec<f64>, records: &[PrdcScores], expected: Option<f64>, seed: u64) -> ScoreRow {
    ScoreRow {
        params,
        scores: PrdcScores::mean(records).expect("at least one trial"),
        spread: MetricSpread::of(records),
        expected_coverage: expected,
        trials: records.len(),
        seed,
    }
}

/// Real and fake both drawn from `N(0, I)`, swept over sample size and k.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdenticalExperimentSpec {
    /// Values of `N = M`.
    pub n_grid: Vec<usize>,
    pub k_grid: Vec<usize>,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for IdenticalExperimentSpec {
    fn default() -> Self {
        IdenticalExperimentSpec {
            n_grid: vec![1000, 2000, 5000, 10_000],
            k_grid: vec![1, 3, 5, 10],
            dim: 64,
            trials: 1,
            seed: 0,
        }
    }
}

/// One row per `(N, k)` cell, using `k` for all four metrics. Rows carry the
/// analytic expected coverage for comparison.
pub fn run_identical_experiment(spec: &IdenticalExperimentSpec, config: &KnnConfig) -> Result<ScoreTable> {
    check_trials(spec.trials)?;
    if spec.n_grid.is_empty() || spec.k_grid.is_empty() {
        return Err(Error::InvalidParameter("n and k grids must be non-empty".into()));
    }
    for &n in &spec.n_grid {
        for &k in &spec.k_grid {
            if k == 0 || k >= n {
                return Err(Error::InvalidK { k, n_samples: n });
            }
        }
    }
    let mut n_grid = spec.n_grid.clone();
    n_grid.sort_unstable();
    let mut k_grid = spec.k_grid.clone();
    k_grid.sort_unstable();

    let eval = Evaluator::new(*config);
    let origin = vec![0.0; spec.dim];
    let mut rows = Vec::with_capacity(n_grid.len() * k_grid.len());
    for &n in &n_grid {
        let mut per_k: Vec<Vec<PrdcScores>> = vec![Vec::with_capacity(spec.trials); k_grid.len()];
        for t in 0..spec.trials as u64 {
            // Same data for every k at this (N, trial).
            let real = sample_gaussian(n, spec.dim, &origin, 1.0, child_seed(spec.seed, &[n as u64, t, 0]))?;
            let fake = sample_gaussian(n, spec.dim, &origin, 1.0, child_seed(spec.seed, &[n as u64, t, 1]))?;
            for (slot, &k) in k_grid.iter().enumerate() {
                per_k[slot].push(eval.prdc(&real, &fake, MetricConfig::uniform(k))?);
            }
        }
        for (records, &k) in per_k.iter().zip(&k_grid) {
            let expected = expected_coverage(n as u64, n as u64, k as u64)?;
            rows.push(row(vec![n as f64, k as f64], records, Some(expected), spec.seed));
        }
    }
    Ok(ScoreTable {
        experiment: "identical".into(),
        param_names: vec!["n".into(), "k".into()],
        rows,
        metadata: serde_json::to_value(spec).expect("spec serializes"),
    })
}

/// Which side, if any, receives the injected outlier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutlierMode {
    None,
    RealOutlier,
    FakeOutlier,
}

/// Real `N(0, I)` against fake `N(mu * 1, I)` over a grid of `mu`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslationExperimentSpec {
    pub mu_grid: Vec<f64>,
    pub dim: usize,
    pub n_real: usize,
    pub n_fake: usize,
    pub outlier_mode: OutlierMode,
    /// Replaces the last sample of the chosen side.
    pub outlier_point: Vec<f64>,
    pub k_pr: usize,
    pub k_dc: usize,
    pub trials: usize,
    pub seed: u64,
}

impl TranslationExperimentSpec {
    /// Evenly spaced `mu` values from -1 to 1 inclusive.
    pub fn uniform_mu_grid(points: usize) -> Vec<f64> {
        match points {
            0 => Vec::new(),
            1 => vec![0.0],
            _ => (0..points).map(|i| -1.0 + 2.0 * i as f64 / (points - 1) as f64).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_trials(self.trials)?;
        if self.mu_grid.is_empty() {
            return Err(Error::InvalidParameter("mu grid is empty".into()));
        }
        if let Some(mu) = self.mu_grid.iter().find(|m| !(-1.0..=1.0).contains(*m)) {
            return Err(Error::InvalidParameter(format!("mu = {mu} outside [-1, 1]")));
        }
        if self.outlier_point.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: self.outlier_point.len() });
        }
        if self.outlier_point.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("outlier point must be finite".into()));
        }
        MetricConfig { k_pr: self.k_pr, k_dc: self.k_dc }.validate(self.n_real, self.n_fake)
    }
}

impl Default for TranslationExperimentSpec {
    fn default() -> Self {
        TranslationExperimentSpec {
            mu_grid: Self::uniform_mu_grid(21),
            dim: 64,
            n_real: 2000,
            n_fake: 2000,
            outlier_mode: OutlierMode::None,
            outlier_point: vec![3.0; 64],
            k_pr: 3,
            k_dc: 5,
            trials: 1,
            seed: 0,
        }
    }
}

/// Samples depend only on `(seed, mu index, trial)`, never on the outlier
/// mode, so runs that differ only in `outlier_mode` share their inliers.
pub fn run_translation_experiment(spec: &TranslationExperimentSpec, config: &KnnConfig) -> Result<ScoreTable> {
    spec.validate()?;
    let mut order: Vec<usize> = (0..spec.mu_grid.len()).collect();
    order.sort_by(|&a, &b| spec.mu_grid[a].total_cmp(&spec.mu_grid[b]));

    let eval = Evaluator::new(*config);
    let metric = MetricConfig { k_pr: spec.k_pr, k_dc: spec.k_dc };
    let origin = vec![0.0; spec.dim];
    let mut rows = Vec::with_capacity(order.len());
    for idx in order {
        let mu = spec.mu_grid[idx];
        let shift = vec![mu; spec.dim];
        let mut records = Vec::with_capacity(spec.trials);
        for t in 0..spec.trials as u64 {
            let mut real =
                sample_gaussian(spec.n_real, spec.dim, &origin, 1.0, child_seed(spec.seed, &[idx as u64, t, 0]))?;
            let mut fake =
                sample_gaussian(spec.n_fake, spec.dim, &shift, 1.0, child_seed(spec.seed, &[idx as u64, t, 1]))?;
            match spec.outlier_mode {
                OutlierMode::None => {}
                OutlierMode::RealOutlier => real = real.with_row_replaced(spec.n_real - 1, &spec.outlier_point)?,
                OutlierMode::FakeOutlier => fake = fake.with_row_replaced(spec.n_fake - 1, &spec.outlier_point)?,
            }
            records.push(eval.prdc(&real, &fake, metric)?);
        }
        rows.push(row(vec![mu], &records, None, spec.seed));
    }
    Ok(ScoreTable {
        experiment: "translate".into(),
        param_names: vec!["mu".into()],
        rows,
        metadata: serde_json::to_value(spec).expect("spec serializes"),
    })
}

/// Real: equal-weight mixture of well-separated modes. Fake: the same modes
/// reweighted by a [`DropSchedule`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeDropSpec {
    pub kind: DropKind,
    pub dim: usize,
    /// Sample count of both sets.
    pub n: usize,
    pub k_pr: usize,
    pub k_dc: usize,
    pub trials: usize,
    pub seed: u64,
    pub n_modes: usize,
    /// Mode `m` is centred at `separation * e_m`.
    pub separation: f64,
    pub component_scale: f64,
}

impl Default for ModeDropSpec {
    fn default() -> Self {
        ModeDropSpec {
            kind: DropKind::Sequential,
            dim: 64,
            n: 5000,
            k_pr: 3,
            k_dc: 5,
            trials: 1,
            seed: 0,
            n_modes: 10,
            separation: 10.0,
            component_scale: 1.0,
        }
    }
}

/// One row per schedule step, with parameters `step` and `mode0_weight`.
///
/// Within a trial the real set and the fake seed are shared across steps, so
/// step-to-step differences reflect the schedule rather than resampling noise.
pub fn run_mode_drop_experiment(spec: &ModeDropSpec, config: &KnnConfig) -> Result<ScoreTable> {
    check_trials(spec.trials)?;
    MetricConfig { k_pr: spec.k_pr, k_dc: spec.k_dc }.validate(spec.n, spec.n)?;
    let real_mixture = MixtureSpec::separated_modes(spec.n_modes, spec.dim, spec.separation, spec.component_scale)?;
    let schedule = DropSchedule::new(spec.kind, spec.n_modes)?;
    let eval = Evaluator::new(*config);
    let metric = MetricConfig { k_pr: spec.k_pr, k_dc: spec.k_dc };

    let mut per_step: Vec<Vec<PrdcScores>> = vec![Vec::with_capacity(spec.trials); schedule.steps.len()];
    for t in 0..spec.trials as u64 {
        let real = sample_mixture(&real_mixture, spec.n, child_seed(spec.seed, &[t, 0]))?;
        for (s, weights) in schedule.steps.iter().enumerate() {
            let fake_mixture = real_mixture.with_weights(weights.clone())?;
            let fake = sample_mixture(&fake_mixture, spec.n, child_seed(spec.seed, &[t, 1]))?;
            per_step[s].push(eval.prdc(&real, &fake, metric)?);
        }
    }
    let rows = per_step
        .iter()
        .zip(&schedule.steps)
        .enumerate()
        .map(|(s, (records, weights))| row(vec![s as f64, weights[0]], records, None, spec.seed))
        .collect();
    Ok(ScoreTable {
        experiment: match spec.kind {
            DropKind::Sequential => "mode-drop-sequential".into(),
            DropKind::Simultaneous => "mode-drop-simultaneous".into(),
        },
        param_names: vec!["step".into(), "mode0_weight".into()],
        rows,
        metadata: serde_json::to_value(spec).expect("spec serializes"),
    })
}
