//! Seeded toy-data generators and the sanity-check experiments built on them.
//!
//! Every experiment is a pure function of its spec. Each (grid point, trial)
//! draws from its own child seed derived from the master seed and its
//! indices, so results do not depend on execution order.

mod experiments;
mod outliers;
mod sampling;
mod table;

pub use experiments::{
    run_identical_experiment, run_mode_drop_experiment, run_translation_experiment, IdenticalExperimentSpec,
    ModeDropSpec, OutlierMode, TranslationExperimentSpec,
};
pub use outliers::{split_outliers, OutlierSplit, DEFAULT_INLIER_RATIO};
pub use sampling::{sample_gaussian, sample_mixture, sample_uniform_cube, DropKind, DropSchedule, MixtureSpec};
pub use table::{MetricSpread, ScoreRow, ScoreTable};

/// Derives a child seed from a master seed and a path of indices.
pub fn child_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p.wrapping_add(0x632b_e59b_d9b4_e019))))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
