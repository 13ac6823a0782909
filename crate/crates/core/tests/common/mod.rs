//! Independent reference implementations and fixtures shared by the
//! integration tests. Nothing here calls into the crate's kernels.

#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use prdc::EmbeddingSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Plain left-to-right sum of squared differences.
pub fn naive_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    s.sqrt()
}

pub fn naive_matrix(a: &EmbeddingSet, b: &EmbeddingSet) -> Vec<Vec<f64>> {
    (0..a.n_samples()).map(|i| (0..b.n_samples()).map(|j| naive_distance(a.row(i), b.row(j))).collect()).collect()
}

/// k-th smallest distance to the other rows, by full sort.
pub fn sorted_radii(dist_rows: &[Vec<f64>], k: usize) -> Vec<f64> {
    dist_rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut others: Vec<f64> = row.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &d)| d).collect();
            others.sort_by(f64::total_cmp);
            others[k - 1]
        })
        .collect()
}

/// All four metrics by testing every (ball, point) pair.
pub struct OracleScores {
    pub precision: f64,
    pub recall: f64,
    pub density: f64,
    pub coverage: f64,
}

pub fn oracle_prdc(real: &EmbeddingSet, fake: &EmbeddingSet, k_pr: usize, k_dc: usize) -> OracleScores {
    let rr = naive_matrix(real, real);
    let ff = naive_matrix(fake, fake);
    let rf = naive_matrix(real, fake);
    let real_pr = sorted_radii(&rr, k_pr);
    let real_dc = sorted_radii(&rr, k_dc);
    let fake_pr = sorted_radii(&ff, k_pr);
    let (n, m) = (real.n_samples(), fake.n_samples());

    let mut precise = 0;
    let mut members = 0;
    for j in 0..m {
        let mut inside = false;
        for i in 0..n {
            if rf[i][j] < real_pr[i] {
                inside = true;
            }
            if rf[i][j] < real_dc[i] {
                members += 1;
            }
        }
        precise += inside as usize;
    }
    let recalled = (0..n).filter(|&i| (0..m).any(|j| rf[i][j] < fake_pr[j])).count();
    let covered = (0..n).filter(|&i| (0..m).any(|j| rf[i][j] < real_dc[i])).count();
    OracleScores {
        precision: precise as f64 / m as f64,
        recall: recalled as f64 / n as f64,
        density: members as f64 / (k_dc * m) as f64,
        coverage: covered as f64 / n as f64,
    }
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Uniform points in `[-scale, scale]^dim`; distinct with probability one.
pub fn random_set(rng: &mut impl Rng, n: usize, dim: usize, scale: f64) -> EmbeddingSet {
    let data = (0..n * dim).map(|_| rng.random_range(-scale..scale)).collect();
    EmbeddingSet::from_flat(data, n, dim).unwrap()
}

/// Exact `1 - prod (N - t) / (M + N - t)` in rational arithmetic.
pub fn rational_coverage(n: u64, m: u64, k: u64) -> BigRational {
    let mut miss = BigRational::one();
    for t in 1..=k {
        miss *= BigRational::new(BigInt::from(n - t), BigInt::from(m + n - t));
    }
    BigRational::one() - miss
}
