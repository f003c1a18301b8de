//! The studentized mean-difference statistic and its brute-force oracle.

use super::moments::MomentCache;
use super::{Result, StatError, TwoSample};
use crate::util::pairwise_sum;

/// Per-coordinate pair table for one group: leave-two-out variance plus the
/// product and sum of the pair values, for every unordered observation pair.
struct PairStats {
    pairs: Vec<(usize, usize)>,
    var: Vec<f64>,
    prod: Vec<f64>,
    sum: Vec<f64>,
}

impl PairStats {
    fn with_capacity(n: usize) -> Self {
        let m = n * (n - 1) / 2;
        let mut pairs = Vec::with_capacity(m);
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
        PairStats { pairs, var: vec![0.0; m], prod: vec![0.0; m], sum: vec![0.0; m] }
    }

    /// Fill the tables for coordinate values `col` of a sample with raw
    /// moment sums `(col_sum, col_sumsq)`. `scale` is applied to the
    /// variance (1 for group 1, gamma for group 2).
    fn fill(&mut self, col: &[f64], col_sum: f64, col_sumsq: f64, scale: f64) {
        let n = col.len();
        let m = (n - 2) as f64;
        let mut idx = 0;
        for i in 0..n {
            let xi = col[i];
            let si = col_sum - xi;
            let qi = col_sumsq - xi * xi;
            for &xj in &col[(i + 1)..] {
                let s = si - xj;
                let q = qi - xj * xj;
                self.var[idx] = scale * ((q - s * s / m) / (m - 1.0));
                self.prod[idx] = xi * xj;
                self.sum[idx] = xi + xj;
                idx += 1;
            }
        }
    }
}

/// The FS statistic.
///
/// Enumerates unordered pairs in each group; the four ordered terms sharing
/// one denominator are combined algebraically, which is why the numerator
/// below reads `2 (2 ab + 2 cd - (a+b)(c+d))`. Coordinate sums accumulate
/// separately and are combined pairwise. Any non-positive or non-finite
/// denominator aborts with its location.
pub fn fs_statistic(ts: &TwoSample) -> Result<f64> {
    let n1 = ts.sample1.n();
    let n2 = ts.sample2.n();
    require_at_least(ts, 4)?;
    let p = ts.p();
    let gamma = ts.gamma();
    let cache1 = MomentCache::build(&ts.sample1);
    let cache2 = MomentCache::build(&ts.sample2);

    let mut tab1 = PairStats::with_capacity(n1);
    let mut tab2 = PairStats::with_capacity(n2);
    let mut col1 = vec![0.0; n1];
    let mut col2 = vec![0.0; n2];
    let mut per_coord = Vec::with_capacity(p);

    for k in 0..p {
        ts.sample1.copy_column(k, &mut col1);
        ts.sample2.copy_column(k, &mut col2);
        tab1.fill(&col1, cache1.col_sum(k), cache1.col_sumsq(k), 1.0);
        tab2.fill(&col2, cache2.col_sum(k), cache2.col_sumsq(k), gamma);

        let mut acc = 0.0;
        for q1 in 0..tab1.pairs.len() {
            let a = tab1.var[q1];
            let u = tab1.prod[q1];
            let v = tab1.sum[q1];
            for q2 in 0..tab2.pairs.len() {
                let den = a + tab2.var[q2];
                if !(den > 0.0 && den.is_finite()) {
                    let (i, j) = tab1.pairs[q1];
                    let (s, t) = tab2.pairs[q2];
                    return Err(StatError::DegenerateDenominator {
                        coord: k,
                        excluded1: vec![i, j],
                        excluded2: vec![s, t],
                        value: den,
                    });
                }
                let num = 2.0 * (2.0 * (u + tab2.prod[q2]) - v * tab2.sum[q2]);
                acc += num / den;
            }
        }
        per_coord.push(acc);
    }

    let scale = (n1 * (n1 - 1)) as f64 * (n2 * (n2 - 1)) as f64;
    Ok(pairwise_sum(&per_coord) / scale)
}

/// Literal evaluation of the defining quadruple sum, recomputing each
/// leave-two-out variance naively per term. Serves as the independent oracle
/// for [`fs_statistic`]; intended for small inputs only.
pub fn fs_statistic_oracle(ts: &TwoSample) -> Result<f64> {
    let n1 = ts.sample1.n();
    let n2 = ts.sample2.n();
    require_at_least(ts, 4)?;
    let p = ts.p();
    let gamma = ts.gamma();
    let mut per_coord = Vec::with_capacity(p);

    for k in 0..p {
        let mut acc = 0.0;
        for i in 0..n1 {
            for j in 0..n1 {
                if j == i {
                    continue;
                }
                for s in 0..n2 {
                    for t in 0..n2 {
                        if t == s {
                            continue;
                        }
                        let v1 = naive_leave_out_variance(ts, 1, k, &[i, j]);
                        let v2 = naive_leave_out_variance(ts, 2, k, &[s, t]);
                        let den = v1 + gamma * v2;
                        if !(den > 0.0 && den.is_finite()) {
                            return Err(StatError::DegenerateDenominator {
                                coord: k,
                                excluded1: vec![i, j],
                                excluded2: vec![s, t],
                                value: den,
                            });
                        }
                        let num = (ts.sample1.value(i, k) - ts.sample2.value(s, k))
                            * (ts.sample1.value(j, k) - ts.sample2.value(t, k));
                        acc += num / den;
                    }
                }
            }
        }
        per_coord.push(acc);
    }

    let scale = (n1 * (n1 - 1)) as f64 * (n2 * (n2 - 1)) as f64;
    Ok(pairwise_sum(&per_coord) / scale)
}

fn require_at_least(ts: &TwoSample, needed: usize) -> Result<()> {
    if ts.sample1.n() < needed {
        return Err(StatError::TooFewObservations {
            group: super::Group::One,
            needed,
            got: ts.sample1.n(),
        });
    }
    if ts.sample2.n() < needed {
        return Err(StatError::TooFewObservations {
            group: super::Group::Two,
            needed,
            got: ts.sample2.n(),
        });
    }
    Ok(())
}

/// Two-pass variance of the retained values, independent of the moment
/// cache path.
fn naive_leave_out_variance(ts: &TwoSample, group: u8, k: usize, excluded: &[usize]) -> f64 {
    let sample = if group == 1 { &ts.sample1 } else { &ts.sample2 };
    let values: Vec<f64> = (0..sample.n())
        .filter(|i| !excluded.contains(i))
        .map(|i| sample.value(i, k))
        .collect();
    crate::util::sample_variance(&values)
}
