//! Small numeric helpers shared across modules.

/// Pairwise (cascade) summation.
///
/// Used to combine per-coordinate partial sums so the rounding error stays
/// O(log p) instead of O(p), which keeps the tight oracle tolerances
/// meaningful on long coordinate sums.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Sample mean; 0 for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Unbiased sample variance (divisor n-1), two-pass.
pub fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len();
    assert!(n >= 2, "sample variance needs at least two values");
    let m = mean(values);
    let mut acc = 0.0;
    for &v in values {
        let d = v - m;
        acc += d * d;
    }
    acc / (n - 1) as f64
}
