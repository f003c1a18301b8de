//! Comparison statistics for the simulation studies.
//!
//! * [`cq_statistic`] - the identity-scaled statistic of Chen and Qin (2010)
//!   and Bai and Saranadasa (1996): no studentization at all. Shift-invariant
//!   but not scale-invariant.
//! * [`plugin_statistic`] - a PA-surrogate in the spirit of Park and Ayyala
//!   (2013): the same three-part quadratic form, but each part studentized by
//!   its own leave-out pooled-variance plug-in. The three denominators
//!   estimate the same target yet differ slightly, so under the null with
//!   unequal group variances the statistic inherits a positive bias that
//!   grows with the squared common shift; that bias mechanism is exactly what
//!   [`pa_bias`] evaluates analytically. Reports label this test
//!   "PA-surrogate": it is not the literal Park-Ayyala statistic.
//! * [`pa_bias`] - the leading-order null bias of the PA statistic as a
//!   function of the common mean, the per-coordinate variances, and the
//!   sample-size fraction.

use crate::fstest::{
    variance_estimate, Group, MomentCache, Result, ScalingMode, StatError, TestResult,
    TraceEstimates, TwoSample,
};
use crate::util::pairwise_sum;

/// The two baseline statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Cq,
    Plugin,
}

impl BaselineKind {
    pub fn statistic(self, ts: &TwoSample) -> Result<f64> {
        match self {
            BaselineKind::Cq => cq_statistic(ts),
            BaselineKind::Plugin => plugin_statistic(ts),
        }
    }
}

/// Identity-scaled two-sample statistic:
///
/// ```text
/// sum_{i!=j} x1_i' x1_j / (n1(n1-1)) + sum_{s!=t} x2_s' x2_t / (n2(n2-1))
///   - 2 sum_{i,s} x1_i' x2_s / (n1 n2)
/// ```
///
/// computed in O(np) from per-coordinate sums. Algebraically this equals the
/// FS quadruple sum with every denominator replaced by 1.
pub fn cq_statistic(ts: &TwoSample) -> Result<f64> {
    let n1 = ts.sample1.n();
    let n2 = ts.sample2.n();
    for (group, n) in [(Group::One, n1), (Group::Two, n2)] {
        if n < 2 {
            return Err(StatError::TooFewObservations { group, needed: 2, got: n });
        }
    }
    let cache1 = MomentCache::build(&ts.sample1);
    let cache2 = MomentCache::build(&ts.sample2);
    let c1 = (n1 * (n1 - 1)) as f64;
    let c2 = (n2 * (n2 - 1)) as f64;
    let c12 = (n1 * n2) as f64;
    let p = ts.p();
    let mut per_coord = Vec::with_capacity(p);
    for k in 0..p {
        let (s1, q1) = (cache1.col_sum(k), cache1.col_sumsq(k));
        let (s2, q2) = (cache2.col_sum(k), cache2.col_sumsq(k));
        per_coord.push((s1 * s1 - q1) / c1 + (s2 * s2 - q2) / c2 - 2.0 * s1 * s2 / c12);
    }
    Ok(pairwise_sum(&per_coord))
}

/// PA-surrogate statistic with three leave-out pooled-variance denominators.
///
/// Per coordinate, the three quadratic-form parts are each scaled by a
/// pooled-variance estimate that excludes exactly the observations in that
/// part's numerator (pooled centered sums of squares over both groups,
/// divisor `n - 4`):
///
/// * within group 1, pair (i, j): group 1's sum of squares without i and j,
///   plus group 2's full sum of squares;
/// * within group 2, pair (s, t): symmetric;
/// * cross term (i, s): each group's sum of squares without that single
///   observation.
///
/// Each denominator is independent of its own numerator, but the three
/// estimators are not identical, which reproduces the shift-driven null bias
/// of the PA test under unequal variances.
pub fn plugin_statistic(ts: &TwoSample) -> Result<f64> {
    let n1 = ts.sample1.n();
    let n2 = ts.sample2.n();
    for (group, n) in [(Group::One, n1), (Group::Two, n2)] {
        if n < 3 {
            return Err(StatError::TooFewObservations { group, needed: 3, got: n });
        }
    }
    let cache1 = MomentCache::build(&ts.sample1);
    let cache2 = MomentCache::build(&ts.sample2);
    let p = ts.p();
    let pooled_df = (n1 + n2 - 4) as f64;
    let c1 = (n1 * (n1 - 1)) as f64;
    let c2 = (n2 * (n2 - 1)) as f64;
    let c12 = (n1 * n2) as f64;

    let mut col1 = vec![0.0; n1];
    let mut col2 = vec![0.0; n2];
    let mut dev1 = vec![0.0; n1];
    let mut dev2 = vec![0.0; n2];
    let mut single1 = vec![0.0; n1];
    let mut single2 = vec![0.0; n2];
    let mut per_coord = Vec::with_capacity(p);

    for k in 0..p {
        ts.sample1.copy_column(k, &mut col1);
        ts.sample2.copy_column(k, &mut col2);
        let mean1 = cache1.mean(k);
        let mean2 = cache2.mean(k);
        let ss1 = cache1.centered_ss(k);
        let ss2 = cache2.centered_ss(k);
        for i in 0..n1 {
            dev1[i] = col1[i] - mean1;
            // Sum of squares with observation i removed.
            single1[i] = ss1 - dev1[i] * dev1[i] * (n1 as f64) / ((n1 - 1) as f64);
        }
        for s in 0..n2 {
            dev2[s] = col2[s] - mean2;
            single2[s] = ss2 - dev2[s] * dev2[s] * (n2 as f64) / ((n2 - 1) as f64);
        }

        let mut part1 = 0.0;
        for i in 0..n1 {
            for j in (i + 1)..n1 {
                let pair_dev = dev1[i] + dev1[j];
                let removed = ss1
                    - dev1[i] * dev1[i]
                    - dev1[j] * dev1[j]
                    - pair_dev * pair_dev / ((n1 - 2) as f64);
                let den = (removed + ss2) / pooled_df;
                if !(den > 0.0 && den.is_finite()) {
                    return Err(StatError::DegenerateDenominator {
                        coord: k,
                        excluded1: vec![i, j],
                        excluded2: Vec::new(),
                        value: den,
                    });
                }
                part1 += 2.0 * col1[i] * col1[j] / den;
            }
        }

        let mut part2 = 0.0;
        for s in 0..n2 {
            for t in (s + 1)..n2 {
                let pair_dev = dev2[s] + dev2[t];
                let removed = ss2
                    - dev2[s] * dev2[s]
                    - dev2[t] * dev2[t]
                    - pair_dev * pair_dev / ((n2 - 2) as f64);
                let den = (ss1 + removed) / pooled_df;
                if !(den > 0.0 && den.is_finite()) {
                    return Err(StatError::DegenerateDenominator {
                        coord: k,
                        excluded1: Vec::new(),
                        excluded2: vec![s, t],
                        value: den,
                    });
                }
                part2 += 2.0 * col2[s] * col2[t] / den;
            }
        }

        let mut part3 = 0.0;
        for i in 0..n1 {
            for s in 0..n2 {
                let den = (single1[i] + single2[s]) / pooled_df;
                if !(den > 0.0 && den.is_finite()) {
                    return Err(StatError::DegenerateDenominator {
                        coord: k,
                        excluded1: vec![i],
                        excluded2: vec![s],
                        value: den,
                    });
                }
                part3 += col1[i] * col2[s] / den;
            }
        }

        per_coord.push(part1 / c1 + part2 / c2 - 2.0 * part3 / c12);
    }
    Ok(pairwise_sum(&per_coord))
}

/// CQ test decision: identity-mode traces, no studentization anywhere.
pub fn cq_test(ts: &TwoSample, alpha: f64) -> Result<TestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatError::InvalidAlpha { alpha });
    }
    let statistic = cq_statistic(ts)?;
    let traces = TraceEstimates::estimate(ts, ScalingMode::Identity)?;
    let variance = variance_estimate(&traces, ts.sample1.n(), ts.sample2.n());
    TestResult::from_statistic(statistic, variance, alpha)
}

/// PA-surrogate test decision.
///
/// The variance estimate reuses the studentized-mode traces: the surrogate's
/// bias affects the mean, not the leading-order variance target.
pub fn plugin_test(ts: &TwoSample, alpha: f64) -> Result<TestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatError::InvalidAlpha { alpha });
    }
    let statistic = plugin_statistic(ts)?;
    let traces = TraceEstimates::estimate(ts, ScalingMode::Studentized)?;
    let variance = variance_estimate(&traces, ts.sample1.n(), ts.sample2.n());
    TestResult::from_statistic(statistic, variance, alpha)
}

/// Inputs for the analytical PA bias formula.
#[derive(Debug, Clone, PartialEq)]
pub struct BiasInputs {
    pub mu: Vec<f64>,
    pub sigma1_sq: Vec<f64>,
    pub sigma2_sq: Vec<f64>,
    pub kappa: f64,
    pub n: usize,
}

impl BiasInputs {
    pub fn new(
        mu: Vec<f64>,
        sigma1_sq: Vec<f64>,
        sigma2_sq: Vec<f64>,
        kappa: f64,
        n: usize,
    ) -> Result<Self> {
        if mu.len() != sigma1_sq.len() || mu.len() != sigma2_sq.len() {
            return Err(StatError::InvalidSpec(format!(
                "bias input lengths differ: mu {}, sigma1_sq {}, sigma2_sq {}",
                mu.len(),
                sigma1_sq.len(),
                sigma2_sq.len()
            )));
        }
        if sigma1_sq.iter().chain(&sigma2_sq).any(|v| !(*v > 0.0)) {
            return Err(StatError::InvalidSpec("variances must be positive".into()));
        }
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(StatError::InvalidSpec(format!("kappa {kappa} outside (0, 1)")));
        }
        if n == 0 {
            return Err(StatError::InvalidSpec("n must be positive".into()));
        }
        Ok(BiasInputs { mu, sigma1_sq, sigma2_sq, kappa, n })
    }
}

/// Leading-order null bias of the PA statistic under a common mean:
///
/// ```text
/// sum_k 2 n^-2 mu_k^2 (s1_k - s2_k)^2 / (kappa s1_k + (1-kappa) s2_k)^3
/// ```
///
/// Zero when the two groups share every coordinate variance or when the
/// common mean is zero; grows with the squared mean components.
pub fn pa_bias(inputs: &BiasInputs) -> f64 {
    let n_sq = (inputs.n * inputs.n) as f64;
    let per_coord: Vec<f64> = inputs
        .mu
        .iter()
        .zip(inputs.sigma1_sq.iter().zip(&inputs.sigma2_sq))
        .map(|(&mu, (&s1, &s2))| {
            let gap = s1 - s2;
            let pooled = inputs.kappa * s1 + (1.0 - inputs.kappa) * s2;
            2.0 * mu * mu * gap * gap / (n_sq * pooled * pooled * pooled)
        })
        .collect();
    pairwise_sum(&per_coord)
}
