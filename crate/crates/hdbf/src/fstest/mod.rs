//! The FS test: a scale- and shift-invariant two-sample location statistic
//! for high-dimensional data with unequal covariances.
//!
//! The statistic sums, over coordinates, products of cross-group differences
//! studentized by leave-two-out per-coordinate variances:
//!
//! ```text
//! T = (n1(n1-1))^-1 (n2(n2-1))^-1 sum_k sum_{i!=j} sum_{s!=t}
//!        (x1[i,k] - x2[s,k]) (x1[j,k] - x2[t,k])
//!      / (v1[k;(i,j)] + gamma * v2[k;(s,t)])
//! ```
//!
//! where `v1[k;(i,j)]` is the sample variance of coordinate `k` in group 1
//! with observations `i` and `j` removed, and `gamma = n1/n2`. Excluding
//! exactly the observations appearing in a term's numerator makes every
//! denominator independent of its numerator, so the statistic has exactly
//! zero expectation under equal means. The variance of `T` is estimated from
//! three leave-out studentized trace estimators and the decision is the
//! one-sided normal approximation.

mod decision;
mod moments;
mod statistic;
mod traces;

pub use decision::{fs_test, normal_upper_quantile, upper_tail_p, TestResult};
pub use moments::{leave_out_variance, MomentCache};
pub use statistic::{fs_statistic, fs_statistic_oracle};
pub use traces::{cross_trace_estimate, trace_sq_estimate, variance_estimate, ScalingMode, TraceEstimates};

use std::fmt;

/// Which of the two samples an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    One,
    Two,
}

impl Group {
    /// 0-based index, handy for array-of-two layouts.
    pub fn index(self) -> usize {
        match self {
            Group::One => 0,
            Group::Two => 1,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::One => write!(f, "1"),
            Group::Two => write!(f, "2"),
        }
    }
}

/// Errors surfaced by the statistic and estimator kernels.
///
/// Degenerate denominators abort with the exact location rather than being
/// regularized away; the Monte Carlo harness records them as flags.
#[derive(Debug, Clone, PartialEq)]
pub enum StatError {
    /// Sample construction rejected: bad shape or non-finite entries.
    InvalidSample(String),
    /// The two samples disagree on the coordinate dimension.
    DimensionMismatch { p1: usize, p2: usize },
    /// An operation needs more observations than a sample holds.
    TooFewObservations { group: Group, needed: usize, got: usize },
    /// A leave-out variance would retain fewer than two values.
    TooFewRetained { retained: usize },
    /// A studentizing denominator was non-positive or non-finite.
    ///
    /// `excluded1` / `excluded2` identify the observations left out of each
    /// group's variance for the offending term.
    DegenerateDenominator {
        coord: usize,
        excluded1: Vec<usize>,
        excluded2: Vec<usize>,
        value: f64,
    },
    /// The estimated variance of the statistic was not positive.
    NonPositiveVariance { value: f64 },
    /// Significance level outside (0, 1).
    InvalidAlpha { alpha: f64 },
    /// A generative or analytical specification violates its invariants.
    InvalidSpec(String),
}

impl fmt::Display for StatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatError::InvalidSample(msg) => write!(f, "invalid sample: {msg}"),
            StatError::DimensionMismatch { p1, p2 } => {
                write!(f, "samples have different dimensions: {p1} vs {p2}")
            }
            StatError::TooFewObservations { group, needed, got } => {
                write!(f, "group {group} needs at least {needed} observations, has {got}")
            }
            StatError::TooFewRetained { retained } => {
                write!(f, "leave-out variance retains {retained} values, needs at least 2")
            }
            StatError::DegenerateDenominator { coord, excluded1, excluded2, value } => write!(
                f,
                "degenerate denominator {value} at coordinate {coord} \
                 (excluded from group 1: {excluded1:?}, from group 2: {excluded2:?})"
            ),
            StatError::NonPositiveVariance { value } => {
                write!(f, "estimated variance {value} is not positive")
            }
            StatError::InvalidAlpha { alpha } => {
                write!(f, "significance level {alpha} is outside (0, 1)")
            }
            StatError::InvalidSpec(msg) => write!(f, "invalid specification: {msg}"),
        }
    }
}

impl std::error::Error for StatError {}

pub type Result<T> = std::result::Result<T, StatError>;

/// One group's observations: an `n x p` matrix stored row-major, rows are
/// observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    data: Vec<f64>,
    n: usize,
    p: usize,
}

impl Sample {
    /// Build a sample from row-major data; rejects empty shapes, length
    /// mismatches, and non-finite entries.
    pub fn new(n: usize, p: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(StatError::InvalidSample(format!("empty shape {n}x{p}")));
        }
        if data.len() != n * p {
            return Err(StatError::InvalidSample(format!(
                "data length {} does not match shape {n}x{p}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(StatError::InvalidSample(format!(
                "non-finite entry {} at observation {}, coordinate {}",
                data[pos],
                pos / p,
                pos % p
            )));
        }
        Ok(Sample { data, n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Observation `i` as a coordinate slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.p..(i + 1) * self.p]
    }

    pub fn value(&self, i: usize, k: usize) -> f64 {
        self.data[i * self.p + k]
    }

    /// Copy coordinate `k` of every observation into `out`.
    pub fn copy_column(&self, k: usize, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.n);
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.data[i * self.p + k];
        }
    }
}

/// The two samples of one testing problem plus the size ratio
/// `gamma = n1/n2` used throughout the studentization.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSample {
    pub sample1: Sample,
    pub sample2: Sample,
    gamma: f64,
}

impl TwoSample {
    pub fn new(sample1: Sample, sample2: Sample) -> Result<Self> {
        if sample1.p() != sample2.p() {
            return Err(StatError::DimensionMismatch { p1: sample1.p(), p2: sample2.p() });
        }
        let gamma = sample1.n() as f64 / sample2.n() as f64;
        Ok(TwoSample { sample1, sample2, gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn p(&self) -> usize {
        self.sample1.p()
    }

    pub fn sample(&self, group: Group) -> &Sample {
        match group {
            Group::One => &self.sample1,
            Group::Two => &self.sample2,
        }
    }
}
