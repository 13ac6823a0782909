//! Closed-form expectations when real and fake samples are drawn from the same
//! distribution, and the k selection rule built on them.
//!
//! Under identical distributions the expected density is exactly 1, and the
//! expected coverage is
//!
//! ```text
//! E[coverage] = 1 - prod_{t=1..k} (N - t) / (M + N - t)
//! ```
//!
//! which tends to `1 - 2^-k` as `M = N -> inf`. Neither depends on the
//! distribution or the dimension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest k meeting a coverage target, with the value it achieves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperparameterChoice {
    pub k: u64,
    pub n_real: u64,
    pub n_fake: u64,
    pub epsilon: f64,
    pub achieved_expected_coverage: f64,
}

fn check_sizes(n_real: u64, n_fake: u64) -> Result<()> {
    if n_real < 2 {
        return Err(Error::InvalidParameter(format!("n_real must be at least 2, got {n_real}")));
    }
    if n_fake < 1 {
        return Err(Error::InvalidParameter("n_fake must be at least 1".into()));
    }
    Ok(())
}

fn to_k_error(k: u64, n_real: u64) -> Error {
    Error::InvalidK {
        k: usize::try_from(k).unwrap_or(usize::MAX),
        n_samples: usize::try_from(n_real).unwrap_or(usize::MAX),
    }
}

// (N - t) / (M + N - t), each factor in (0, 1).
#[inline]
fn miss_factor(n_real: u64, n_fake: u64, t: u64) -> f64 {
    (n_real - t) as f64 / (n_fake + n_real - t) as f64
}

/// Expected coverage of identically distributed real and fake sets.
///
/// Evaluated as a running product of `k` ratios, so no factorial-sized
/// intermediate is ever formed.
pub fn expected_coverage(n_real: u64, n_fake: u64, k: u64) -> Result<f64> {
    check_sizes(n_real, n_fake)?;
    if k == 0 || k >= n_real {
        return Err(to_k_error(k, n_real));
    }
    let miss = (1..=k).fold(1.0, |p, t| p * miss_factor(n_real, n_fake, t));
    Ok(1.0 - miss)
}

/// `1 - 2^-k`, the large-sample limit of [`expected_coverage`] with `M = N`.
pub fn expected_coverage_limit(k: u32) -> f64 {
    1.0 - 0.5f64.powi(k as i32)
}

/// Expected density under identical distributions.
pub fn expected_density() -> f64 {
    1.0
}

/// Smallest k with `expected_coverage(n_real, n_fake, k) > 1 - epsilon`.
///
/// Scans upward from `k = 1`; the expectation is strictly increasing in k so
/// the first hit is the minimum.
pub fn select_k(n_real: u64, n_fake: u64, epsilon: f64) -> Result<HyperparameterChoice> {
    check_sizes(n_real, n_fake)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let target = 1.0 - epsilon;
    let mut miss = 1.0;
    let mut best = 0.0;
    for k in 1..n_real {
        // Same multiplication order as `expected_coverage`, so values agree bit for bit.
        miss *= miss_factor(n_real, n_fake, k);
        best = 1.0 - miss;
        if best > target {
            return Ok(HyperparameterChoice { k, n_real, n_fake, epsilon, achieved_expected_coverage: best });
        }
    }
    Err(Error::NoSatisfyingK { n_real, target, best, best_k: n_real - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_factor() {
        assert_eq!(expected_coverage(2, 1, 1).unwrap(), 0.5);
    }

    #[test]
    fn default_setting_is_about_0_969() {
        let v = expected_coverage(10_000, 10_000, 5).unwrap();
        assert_eq!(format!("{v:.3}"), "0.969");
        assert!(v > 0.95);
    }

    #[test]
    fn limit_values() {
        assert_eq!(expected_coverage_limit(1), 0.5);
        assert_eq!(expected_coverage_limit(5), 0.96875);
        let finite = expected_coverage(10_000_000, 10_000_000, 20).unwrap();
        assert!((finite - expected_coverage_limit(20)).abs() < 1e-5);
    }

    #[test]
    fn density_is_one() {
        assert_eq!(expected_density(), 1.0);
    }

    #[test]
    fn select_k_examples() {
        let c = select_k(10_000, 10_000, 0.05).unwrap();
        assert_eq!(c.k, 5);
        assert_eq!(c.achieved_expected_coverage, expected_coverage(10_000, 10_000, 5).unwrap());
        assert_eq!(select_k(2, 1, 0.6).unwrap().k, 1);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(expected_coverage(5, 5, 5), Err(Error::InvalidK { k: 5, n_samples: 5 })));
        assert!(matches!(expected_coverage(5, 5, 0), Err(Error::InvalidK { .. })));
        assert!(expected_coverage(1, 5, 1).is_err());
        assert!(expected_coverage(5, 0, 1).is_err());
        assert!(select_k(100, 100, 0.0).is_err());
        assert!(select_k(100, 100, 1.0).is_err());
        assert!(select_k(100, 100, f64::NAN).is_err());
    }

    #[test]
    fn unreachable_target_reports_best() {
        // N = 3, M = 1000: k <= 2 only.
        let err = select_k(3, 1000, 1e-9).unwrap_err();
        match err {
            Error::NoSatisfyingK { best, best_k, .. } => {
                assert_eq!(best_k, 2);
                assert_eq!(best, expected_coverage(3, 1000, 2).unwrap());
            }
            other => panic!("unexpected {other}"),
        }
    }
}
