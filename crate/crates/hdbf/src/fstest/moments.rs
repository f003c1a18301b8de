//! Per-coordinate moment sums enabling O(1) leave-k-out variances.

use super::{Result, Sample, StatError};

/// Raw per-coordinate sums and sums of squares of one sample.
///
/// `col_sum[k] = sum_i x[i,k]` and `col_sumsq[k] = sum_i x[i,k]^2`. A cache
/// rebuilt from the same sample is bit-identical because the accumulation
/// order is fixed (observations in order, coordinates in order).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCache {
    col_sum: Vec<f64>,
    col_sumsq: Vec<f64>,
    n: usize,
}

impl MomentCache {
    pub fn build(sample: &Sample) -> Self {
        let p = sample.p();
        let mut col_sum = vec![0.0; p];
        let mut col_sumsq = vec![0.0; p];
        for i in 0..sample.n() {
            let row = sample.row(i);
            for k in 0..p {
                let x = row[k];
                col_sum[k] += x;
                col_sumsq[k] += x * x;
            }
        }
        MomentCache { col_sum, col_sumsq, n: sample.n() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn col_sum(&self, k: usize) -> f64 {
        self.col_sum[k]
    }

    pub fn col_sumsq(&self, k: usize) -> f64 {
        self.col_sumsq[k]
    }

    /// Full-sample mean of coordinate `k`.
    pub fn mean(&self, k: usize) -> f64 {
        self.col_sum[k] / self.n as f64
    }

    /// Full-sample unbiased variance of coordinate `k`.
    pub fn full_variance(&self, k: usize) -> f64 {
        let n = self.n as f64;
        (self.col_sumsq[k] - self.col_sum[k] * self.col_sum[k] / n) / (n - 1.0)
    }

    /// Centered sum of squares `sum_i (x[i,k] - mean_k)^2`.
    pub fn centered_ss(&self, k: usize) -> f64 {
        let n = self.n as f64;
        self.col_sumsq[k] - self.col_sum[k] * self.col_sum[k] / n
    }
}

/// Unbiased variance of coordinate `k` after removing the observations in
/// `excluded` (divisor `n - |excluded| - 1`), computed from the cache sums in
/// O(|excluded|) time.
///
/// Indices in `excluded` must be distinct; the subtraction order is the slice
/// order, so identical inputs give bit-identical results.
pub fn leave_out_variance(
    cache: &MomentCache,
    sample: &Sample,
    k: usize,
    excluded: &[usize],
) -> Result<f64> {
    let retained = cache.n() - excluded.len();
    if retained < 2 {
        return Err(StatError::TooFewRetained { retained });
    }
    debug_assert!(
        excluded.iter().enumerate().all(|(a, i)| excluded[..a].iter().all(|j| j != i)),
        "excluded indices must be distinct"
    );
    let mut s = cache.col_sum(k);
    let mut q = cache.col_sumsq(k);
    for &i in excluded {
        let x = sample.value(i, k);
        s -= x;
        q -= x * x;
    }
    let m = retained as f64;
    Ok((q - s * s / m) / (m - 1.0))
}
