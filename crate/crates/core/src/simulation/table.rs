use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::metrics::PrdcScores;

/// Sample standard deviations of the four metrics across trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricSpread {
    pub precision: f64,
    pub recall: f64,
    pub density: f64,
    pub coverage: f64,
}

impl MetricSpread {
    pub fn of(records: &[PrdcScores]) -> MetricSpread {
        if records.len() < 2 {
            return MetricSpread::default();
        }
        let n = records.len() as f64;
        let sd = |f: fn(&PrdcScores) -> f64| {
            let mean = records.iter().map(f).sum::<f64>() / n;
            (records.iter().map(|r| (f(r) - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        MetricSpread {
            precision: sd(|s| s.precision),
            recall: sd(|s| s.recall),
            density: sd(|s| s.density),
            coverage: sd(|s| s.coverage),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    /// Values of the table's `param_names`, in order.
    pub params: Vec<f64>,
    /// Trial-averaged scores.
    pub scores: PrdcScores,
    pub spread: MetricSpread,
    /// Analytic coverage expectation, where one applies.
    pub expected_coverage: Option<f64>,
    pub trials: usize,
    /// Master seed the row's trials were derived from.
    pub seed: u64,
}

/// One row per grid point of a sweep experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub experiment: String,
    pub param_names: Vec<String>,
    pub rows: Vec<ScoreRow>,
    /// Echo of the experiment spec.
    pub metadata: serde_json::Value,
}

impl ScoreTable {
    /// Rows as CSV with a header line. Metric values use six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for name in &self.param_names {
            out.push_str(name);
            out.push(',');
        }
        out.push_str(
            "precision,recall,density,coverage,precision_sd,recall_sd,density_sd,coverage_sd,\
             expected_coverage,k_pr,k_dc,n_real,n_fake,trials,seed\n",
        );
        for row in &self.rows {
            for p in &row.params {
                let _ = write!(out, "{p},");
            }
            let s = &row.scores;
            let d = &row.spread;
            let expected = row.expected_coverage.map(|v| format!("{v:.6}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{},{},{},{},{}",
                s.precision,
                s.recall,
                s.density,
                s.coverage,
                d.precision,
                d.recall,
                d.density,
                d.coverage,
                expected,
                s.k_pr,
                s.k_dc,
                s.n_real,
                s.n_fake,
                row.trials,
                row.seed
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("score tables always serialize")
    }

    /// Value of a named parameter for every row.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.param_names.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|r| r.params[idx]).collect())
    }
}
