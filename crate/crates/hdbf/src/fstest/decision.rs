//! One-sided normal-approximation test decision.

use statrs::distribution::{ContinuousCDF, Normal};

use super::traces::{variance_estimate, ScalingMode, TraceEstimates};
use super::{fs_statistic, Result, StatError, TwoSample};

/// Outcome of one test: the statistic, its estimated variance, the
/// standardized value, and the upper-tail decision at level `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub variance_hat: f64,
    pub z: f64,
    pub p_value: f64,
    pub reject: bool,
    pub alpha: f64,
}

impl TestResult {
    /// Standardize a statistic by an estimated variance and decide.
    ///
    /// Rejects when `z` exceeds the upper-`alpha` normal quantile; the
    /// p-value is the matching upper-tail probability. A non-positive
    /// variance estimate is surfaced as an error, not clamped.
    pub fn from_statistic(statistic: f64, variance_hat: f64, alpha: f64) -> Result<TestResult> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(StatError::InvalidAlpha { alpha });
        }
        if !(variance_hat > 0.0 && variance_hat.is_finite()) {
            return Err(StatError::NonPositiveVariance { value: variance_hat });
        }
        let z = statistic / variance_hat.sqrt();
        Ok(TestResult {
            statistic,
            variance_hat,
            z,
            p_value: upper_tail_p(z),
            reject: z > normal_upper_quantile(alpha),
            alpha,
        })
    }
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal parameters are valid")
}

/// Upper-tail standard normal probability `P(Z > z)`.
pub fn upper_tail_p(z: f64) -> f64 {
    standard_normal().sf(z)
}

/// Upper-`alpha` standard normal quantile.
pub fn normal_upper_quantile(alpha: f64) -> f64 {
    standard_normal().inverse_cdf(1.0 - alpha)
}

/// Run the FS test: statistic, studentized trace variance estimate, decision.
pub fn fs_test(ts: &TwoSample, alpha: f64) -> Result<TestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatError::InvalidAlpha { alpha });
    }
    let statistic = fs_statistic(ts)?;
    let traces = TraceEstimates::estimate(ts, ScalingMode::Studentized)?;
    let variance = variance_estimate(&traces, ts.sample1.n(), ts.sample2.n());
    TestResult::from_statistic(statistic, variance, alpha)
}
