//! Moving-average data generation with exactly known covariances.
//!
//! Each observation is built from an innovation vector of length
//! `p + T - 1`: coordinate `k` is `sum_{l=1..T} rho_l * z[k+l-1] + mu_k`, so
//! neighbouring coordinates share innovations and the covariance is banded
//! with bandwidth `T - 1`. Two innovation scenarios are supported: all
//! standard normal, or a heteroscedastic mix where the first half of the
//! innovation indices are centered Gamma(4, 1) (variance 4, not rescaled)
//! and the rest standard normal. Because the generator knows the innovation
//! variances exactly, [`exact_covariance`] returns the implied covariance
//! bands and trace quantities in closed form; those are the targets the
//! trace estimators are checked against.

use rand::Rng;

use crate::fstest::{Group, Result, Sample, StatError};

/// Innovation distribution scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// All innovations standard normal.
    I,
    /// First half of innovation indices centered Gamma(4, 1), rest normal.
    II,
}

/// How the nonzero mean-shift coordinates are allocated under the
/// alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltCase {
    /// All coordinates shifted by the same magnitude.
    A,
    /// A random half of the coordinates shifted, the rest untouched.
    B,
}

/// Moving-average model description for both groups.
#[derive(Debug, Clone, PartialEq)]
pub struct MaSpec {
    pub scenario: Scenario,
    pub p: usize,
    rho: [Vec<f64>; 2],
}

impl MaSpec {
    pub fn new(scenario: Scenario, p: usize, rho1: Vec<f64>, rho2: Vec<f64>) -> Result<Self> {
        if p == 0 {
            return Err(StatError::InvalidSpec("dimension p must be positive".into()));
        }
        if rho1.is_empty() || rho2.is_empty() {
            return Err(StatError::InvalidSpec("each group needs at least one MA coefficient".into()));
        }
        Ok(MaSpec { scenario, p, rho: [rho1, rho2] })
    }

    pub fn rho(&self, group: Group) -> &[f64] {
        &self.rho[group.index()]
    }

    pub fn t_order(&self, group: Group) -> usize {
        self.rho[group.index()].len()
    }
}

/// Draw `t_order` moving-average coefficients from U(2, 3). Callers keep the
/// result fixed for a whole experiment.
pub fn draw_rho<R: Rng>(t_order: usize, rng: &mut R) -> Vec<f64> {
    (0..t_order).map(|_| 2.0 + rng.random::<f64>()).collect()
}

/// Number of leading innovation indices that come from the Gamma component.
///
/// The half boundary is the one place the "first half" convention lives: it
/// counts innovation indices (length `p + T - 1`), not coordinates.
fn gamma_half_len(scenario: Scenario, innovation_len: usize) -> usize {
    match scenario {
        Scenario::I => 0,
        Scenario::II => innovation_len / 2,
    }
}

/// Variance of the innovation at `idx` under the scenario.
fn innovation_variance(idx: usize, half_len: usize) -> f64 {
    if idx < half_len {
        4.0
    } else {
        1.0
    }
}

/// Centered Gamma(4, 1): the sum of four unit exponentials minus its mean.
/// Exact for the integer shape; variance 4 by construction.
fn centered_gamma4<R: Rng>(rng: &mut R) -> f64 {
    let mut acc = 0.0;
    for _ in 0..4 {
        let u: f64 = rng.random();
        acc -= (1.0 - u).ln();
    }
    acc - 4.0
}

fn draw_innovation<R: Rng>(idx: usize, half_len: usize, rng: &mut R) -> f64 {
    if idx < half_len {
        centered_gamma4(rng)
    } else {
        use rand_distr::{Distribution, StandardNormal};
        StandardNormal.sample(rng)
    }
}

/// Generate `n` observations for `group` with mean vector `mu`.
///
/// Observations are drawn in order from the given stream, each from a fresh
/// innovation vector, so identical `(spec, mu, n, stream)` give bit-identical
/// samples.
pub fn gen_sample<R: Rng>(
    spec: &MaSpec,
    group: Group,
    mu: &[f64],
    n: usize,
    rng: &mut R,
) -> Sample {
    assert_eq!(mu.len(), spec.p, "mean vector length must equal p");
    assert!(n >= 1, "need at least one observation");
    let p = spec.p;
    let rho = spec.rho(group);
    let t = rho.len();
    let innovation_len = p + t - 1;
    let half_len = gamma_half_len(spec.scenario, innovation_len);

    let mut innovations = vec![0.0; innovation_len];
    let mut data = Vec::with_capacity(n * p);
    for _ in 0..n {
        for (idx, z) in innovations.iter_mut().enumerate() {
            *z = draw_innovation(idx, half_len, rng);
        }
        for k in 0..p {
            let mut acc = 0.0;
            for (l, &r) in rho.iter().enumerate() {
                acc += r * innovations[k + l];
            }
            data.push(acc + mu[k]);
        }
    }
    Sample::new(n, p, data).expect("generated data is finite by construction")
}

/// Exact covariance bands and `tr(Sigma^2)` implied by the model for one
/// group.
#[derive(Debug, Clone, PartialEq)]
pub struct CovSummary {
    /// `band[d][k] = cov(X_k, X_{k+d})` for `0 <= d < T`; entries with
    /// `k + d >= p` are zero.
    band: Vec<Vec<f64>>,
    tr_sq: f64,
    p: usize,
}

impl CovSummary {
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of stored lags (the MA order `T`).
    pub fn lags(&self) -> usize {
        self.band.len()
    }

    /// `cov(X_k, X_l)`; zero beyond the band.
    pub fn cov(&self, k: usize, l: usize) -> f64 {
        let (lo, hi) = if k <= l { (k, l) } else { (l, k) };
        let d = hi - lo;
        if d >= self.band.len() || hi >= self.p {
            return 0.0;
        }
        self.band[d][lo]
    }

    /// Exact `tr(Sigma^2)`.
    pub fn tr_sq(&self) -> f64 {
        self.tr_sq
    }
}

/// Exact band covariance for `group`:
/// `cov(X_k, X_{k+d}) = sum_j rho[j+d] rho[j] var(Z[k+d+j])`, the sum running
/// over the innovations the two coordinates share.
pub fn exact_covariance(spec: &MaSpec, group: Group) -> CovSummary {
    let p = spec.p;
    let rho = spec.rho(group);
    let t = rho.len();
    let innovation_len = p + t - 1;
    let half_len = gamma_half_len(spec.scenario, innovation_len);

    let mut band = Vec::with_capacity(t);
    for d in 0..t {
        let mut row = vec![0.0; p];
        for (k, slot) in row.iter_mut().enumerate() {
            if k + d >= p {
                break;
            }
            let mut acc = 0.0;
            for j in 0..(t - d) {
                acc += rho[j + d] * rho[j] * innovation_variance(k + d + j, half_len);
            }
            *slot = acc;
        }
        band.push(row);
    }

    let mut tr_sq = 0.0;
    for (d, row) in band.iter().enumerate() {
        let weight = if d == 0 { 1.0 } else { 2.0 };
        for &v in row {
            tr_sq += weight * v * v;
        }
    }

    CovSummary { band, tr_sq, p }
}

/// Exact `tr(Sigma_1 Sigma_2)` from two band summaries.
pub fn trace_product(cov1: &CovSummary, cov2: &CovSummary) -> f64 {
    assert_eq!(cov1.p, cov2.p);
    let lags = cov1.lags().min(cov2.lags());
    let mut acc = 0.0;
    for d in 0..lags {
        let weight = if d == 0 { 1.0 } else { 2.0 };
        for k in 0..cov1.p {
            acc += weight * cov1.band[d][k] * cov2.band[d][k];
        }
    }
    acc
}

/// Exact targets of the studentized trace estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceTargets {
    pub tr1: f64,
    pub tr2: f64,
    pub tr12: f64,
}

/// Exact `tr((L S_1 L)^2)`, `tr((L S_2 L)^2)` and `tr(L S_1 L^2 S_2 L)` with
/// `L = diag((var_1k + gamma var_2k)^{-1/2})` from the band summaries.
pub fn scaled_trace_targets(cov1: &CovSummary, cov2: &CovSummary, gamma: f64) -> TraceTargets {
    assert_eq!(cov1.p, cov2.p);
    let p = cov1.p;
    let l_sq: Vec<f64> = (0..p).map(|k| 1.0 / (cov1.cov(k, k) + gamma * cov2.cov(k, k))).collect();
    let weighted = |a: &CovSummary, b: &CovSummary| -> f64 {
        let lags = a.lags().min(b.lags());
        let mut acc = 0.0;
        for d in 0..lags {
            let weight = if d == 0 { 1.0 } else { 2.0 };
            for k in 0..p.saturating_sub(d) {
                acc += weight * a.band[d][k] * b.band[d][k] * l_sq[k] * l_sq[k + d];
            }
        }
        acc
    };
    TraceTargets {
        tr1: weighted(cov1, cov1),
        tr2: weighted(cov2, cov2),
        tr12: weighted(cov1, cov2),
    }
}

/// Mean-vector construction: common base plus an optional calibrated shift.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanSpec {
    pub lambda: f64,
    pub eta: f64,
    pub case: AltCase,
    mask: Vec<bool>,
}

impl MeanSpec {
    /// Build the spec, drawing the Case-B mask (exactly `p/2` coordinates)
    /// from the given structure stream. Case A marks every coordinate.
    pub fn new<R: Rng>(
        lambda: f64,
        eta: f64,
        case: AltCase,
        p: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if lambda < 0.0 || !lambda.is_finite() {
            return Err(StatError::InvalidSpec(format!("lambda {lambda} must be nonnegative")));
        }
        if eta < 0.0 || !eta.is_finite() {
            return Err(StatError::InvalidSpec(format!("eta {eta} must be nonnegative")));
        }
        let mask = match case {
            AltCase::A => vec![true; p],
            AltCase::B => {
                let m = p / 2;
                let mut mask = vec![false; p];
                for idx in rand::seq::index::sample(rng, p, m) {
                    mask[idx] = true;
                }
                mask
            }
        };
        Ok(MeanSpec { lambda, eta, case, mask })
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn p(&self) -> usize {
        self.mask.len()
    }
}

/// Draw the common mean base and apply the signal-strength-calibrated shift.
///
/// `mu0 = lambda * U(0,1)^p`, `mu2 = mu0`, and `mu1 = mu0 + delta * mask`
/// where `delta = sqrt(eta * sqrt(tr(S1^2) + tr(S2^2)) / m)` and `m` is the
/// number of masked coordinates, so `||mu1 - mu2||^2 / sqrt(tr(S1^2) +
/// tr(S2^2))` equals `eta` by construction. Scaling fixed unit draws by
/// `lambda` keeps the base draws identical across a lambda sweep.
pub fn make_means<R: Rng>(
    spec: &MeanSpec,
    cov1: &CovSummary,
    cov2: &CovSummary,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let p = spec.p();
    assert_eq!(p, cov1.p());
    assert_eq!(p, cov2.p());
    let mu0: Vec<f64> = (0..p).map(|_| spec.lambda * rng.random::<f64>()).collect();
    let m = spec.mask.iter().filter(|&&b| b).count();
    let delta = if spec.eta == 0.0 {
        0.0
    } else {
        if m == 0 {
            return Err(StatError::InvalidSpec(
                "eta > 0 requires at least one masked coordinate".into(),
            ));
        }
        (spec.eta * (cov1.tr_sq() + cov2.tr_sq()).sqrt() / m as f64).sqrt()
    };
    let mu1: Vec<f64> = mu0
        .iter()
        .zip(&spec.mask)
        .map(|(&base, &on)| if on { base + delta } else { base })
        .collect();
    Ok((mu1, mu0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn rho_draws_live_in_their_interval() {
        let mut r = rng(1);
        for _ in 0..200 {
            let rho = draw_rho(4, &mut r);
            assert!(rho.iter().all(|v| (2.0..3.0).contains(v)));
        }
    }

    #[test]
    fn rho_draws_are_deterministic_per_stream() {
        assert_eq!(draw_rho(3, &mut rng(7)), draw_rho(3, &mut rng(7)));
    }

    #[test]
    fn rho_mean_matches_uniform_mean() {
        let mut r = rng(2);
        let draws = draw_rho(10_000, &mut r);
        let mean = crate::util::mean(&draws);
        assert!((mean - 2.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn degenerate_ma_is_standard_normal() {
        let spec = MaSpec::new(Scenario::I, 10_000, vec![1.0], vec![1.0]).unwrap();
        let mu = vec![0.0; 10_000];
        let sample = gen_sample(&spec, Group::One, &mu, 10, &mut rng(3));
        let all: Vec<f64> = (0..10).flat_map(|i| sample.row(i).to_vec()).collect();
        let var = crate::util::sample_variance(&all);
        assert!((var - 1.0).abs() < 0.02, "variance {var}");
        assert!(crate::util::mean(&all).abs() < 0.02);
    }

    #[test]
    fn scenario_two_halves_are_heteroscedastic() {
        let p = 10_000;
        let spec = MaSpec::new(Scenario::II, p, vec![1.0], vec![1.0]).unwrap();
        let mu = vec![0.0; p];
        let sample = gen_sample(&spec, Group::One, &mu, 10, &mut rng(4));
        let mut first = Vec::new();
        let mut second = Vec::new();
        for i in 0..10 {
            let row = sample.row(i);
            first.extend_from_slice(&row[..p / 2]);
            second.extend_from_slice(&row[p / 2..]);
        }
        let v1 = crate::util::sample_variance(&first);
        let v2 = crate::util::sample_variance(&second);
        assert!((v1 - 4.0).abs() < 0.2, "gamma-half variance {v1}");
        assert!((v2 - 1.0).abs() < 0.05, "normal-half variance {v2}");
        assert!(crate::util::mean(&first).abs() < 0.05, "gamma innovations are centered");
    }

    #[test]
    fn lag_one_correlation_of_two_term_ma() {
        // cov = rho1 rho2 = 1, var = rho1^2 + rho2^2 = 2: correlation 0.5.
        let p = 10_000;
        let spec = MaSpec::new(Scenario::I, p, vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        let mu = vec![0.0; p];
        let sample = gen_sample(&spec, Group::One, &mu, 10, &mut rng(5));
        let mut num = 0.0;
        let mut den = 0.0;
        let mut count = 0.0;
        for i in 0..10 {
            let row = sample.row(i);
            for k in 0..p - 1 {
                num += row[k] * row[k + 1];
                den += row[k] * row[k];
                count += 1.0;
            }
        }
        let corr = (num / count) / (den / count);
        assert!((corr - 0.5).abs() < 0.02, "lag-1 correlation {corr}");
    }

    #[test]
    fn exact_covariance_hand_band() {
        let spec = MaSpec::new(Scenario::I, 3, vec![1.0, 1.0], vec![1.0]).unwrap();
        let cov = exact_covariance(&spec, Group::One);
        for k in 0..3 {
            assert_eq!(cov.cov(k, k), 2.0);
        }
        assert_eq!(cov.cov(0, 1), 1.0);
        assert_eq!(cov.cov(1, 2), 1.0);
        assert_eq!(cov.cov(0, 2), 0.0);
        assert_eq!(cov.tr_sq(), 16.0);
    }

    #[test]
    fn exact_covariance_diagonal_case() {
        // T = 1: Sigma = c^2 diag(var(Z)); Scenario II with p = 4 puts the
        // Gamma variance 4 on the first two coordinates.
        let c = 1.7;
        let spec = MaSpec::new(Scenario::II, 4, vec![c], vec![c]).unwrap();
        let cov = exact_covariance(&spec, Group::One);
        assert_relative_eq!(cov.cov(0, 0), 4.0 * c * c, max_relative = 1e-15);
        assert_relative_eq!(cov.cov(3, 3), c * c, max_relative = 1e-15);
        let expected_tr = c.powi(4) * (16.0 + 16.0 + 1.0 + 1.0);
        assert_relative_eq!(cov.tr_sq(), expected_tr, max_relative = 1e-14);
    }

    /// Dense Sigma = R V R' with R the banded coefficient matrix and V the
    /// diagonal innovation variances; independent of the band recursion.
    fn dense_covariance(spec: &MaSpec, group: Group) -> Vec<Vec<f64>> {
        let p = spec.p;
        let rho = spec.rho(group);
        let t = rho.len();
        let m = p + t - 1;
        let half = gamma_half_len(spec.scenario, m);
        let v: Vec<f64> = (0..m).map(|idx| innovation_variance(idx, half)).collect();
        let mut sigma = vec![vec![0.0; p]; p];
        for k in 0..p {
            for l in 0..p {
                let mut acc = 0.0;
                for r in 0..m {
                    let a = if r >= k && r < k + t { rho[r - k] } else { 0.0 };
                    let b = if r >= l && r < l + t { rho[r - l] } else { 0.0 };
                    acc += a * v[r] * b;
                }
                sigma[k][l] = acc;
            }
        }
        sigma
    }

    #[test]
    fn band_covariance_matches_dense_construction() {
        for (seed, scenario, t1, t2, p) in
            [(10, Scenario::I, 3, 4, 17), (11, Scenario::II, 3, 4, 50), (12, Scenario::II, 1, 2, 9)]
        {
            let mut r = rng(seed);
            let spec =
                MaSpec::new(scenario, p, draw_rho(t1, &mut r), draw_rho(t2, &mut r)).unwrap();
            for group in [Group::One, Group::Two] {
                let cov = exact_covariance(&spec, group);
                let dense = dense_covariance(&spec, group);
                let mut tr_sq = 0.0;
                for k in 0..p {
                    for l in 0..p {
                        assert_relative_eq!(cov.cov(k, l), dense[k][l], max_relative = 1e-12, epsilon = 1e-12);
                        tr_sq += dense[k][l] * dense[k][l];
                    }
                }
                assert_relative_eq!(cov.tr_sq(), tr_sq, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn trace_product_matches_dense_construction() {
        let mut r = rng(21);
        let spec =
            MaSpec::new(Scenario::II, 23, draw_rho(3, &mut r), draw_rho(4, &mut r)).unwrap();
        let cov1 = exact_covariance(&spec, Group::One);
        let cov2 = exact_covariance(&spec, Group::Two);
        let d1 = dense_covariance(&spec, Group::One);
        let d2 = dense_covariance(&spec, Group::Two);
        let mut expected = 0.0;
        for k in 0..23 {
            for l in 0..23 {
                expected += d1[k][l] * d2[k][l];
            }
        }
        assert_relative_eq!(trace_product(&cov1, &cov2), expected, max_relative = 1e-12);
    }

    #[test]
    fn scaled_targets_match_dense_construction() {
        let mut r = rng(22);
        let spec =
            MaSpec::new(Scenario::II, 19, draw_rho(3, &mut r), draw_rho(4, &mut r)).unwrap();
        let gamma = 1.25;
        let cov1 = exact_covariance(&spec, Group::One);
        let cov2 = exact_covariance(&spec, Group::Two);
        let d1 = dense_covariance(&spec, Group::One);
        let d2 = dense_covariance(&spec, Group::Two);
        let l_sq: Vec<f64> = (0..19).map(|k| 1.0 / (d1[k][k] + gamma * d2[k][k])).collect();
        let mut tr1 = 0.0;
        let mut tr2 = 0.0;
        let mut tr12 = 0.0;
        for k in 0..19 {
            for l in 0..19 {
                let w = l_sq[k] * l_sq[l];
                tr1 += d1[k][l] * d1[k][l] * w;
                tr2 += d2[k][l] * d2[k][l] * w;
                tr12 += d1[k][l] * d2[k][l] * w;
            }
        }
        let targets = scaled_trace_targets(&cov1, &cov2, gamma);
        assert_relative_eq!(targets.tr1, tr1, max_relative = 1e-12);
        assert_relative_eq!(targets.tr2, tr2, max_relative = 1e-12);
        assert_relative_eq!(targets.tr12, tr12, max_relative = 1e-12);
    }

    #[test]
    fn empirical_covariance_matches_band() {
        let p = 6;
        let mut r = rng(30);
        let spec = MaSpec::new(Scenario::II, p, draw_rho(3, &mut r), draw_rho(2, &mut r)).unwrap();
        let mu = vec![0.0; p];
        let n = 10_000;
        for group in [Group::One, Group::Two] {
            let cov = exact_covariance(&spec, group);
            let sample = gen_sample(&spec, group, &mu, n, &mut r);
            for k in 0..p {
                for l in k..p {
                    let mut acc = 0.0;
                    let mut mk = 0.0;
                    let mut ml = 0.0;
                    for i in 0..n {
                        mk += sample.value(i, k);
                        ml += sample.value(i, l);
                    }
                    mk /= n as f64;
                    ml /= n as f64;
                    for i in 0..n {
                        acc += (sample.value(i, k) - mk) * (sample.value(i, l) - ml);
                    }
                    let emp = acc / (n - 1) as f64;
                    let exact = cov.cov(k, l);
                    // Sampling noise of an empirical covariance scales with
                    // the coordinate variances; allow 5% or 4 sigma.
                    let sigma =
                        ((cov.cov(k, k) * cov.cov(l, l) + exact * exact) / n as f64).sqrt();
                    let tol = (0.05 * exact.abs()).max(4.0 * sigma);
                    assert!(
                        (emp - exact).abs() <= tol,
                        "cov({k},{l}) = {emp}, expected {exact} within {tol}"
                    );
                }
            }
        }
    }

    #[test]
    fn mask_shapes_follow_the_case() {
        let a = MeanSpec::new(10.0, 0.2, AltCase::A, 9, &mut rng(40)).unwrap();
        assert!(a.mask().iter().all(|&b| b));
        let b = MeanSpec::new(10.0, 0.2, AltCase::B, 9, &mut rng(41)).unwrap();
        assert_eq!(b.mask().iter().filter(|&&x| x).count(), 4);
    }

    #[test]
    fn zero_eta_gives_identical_means() {
        let mut r = rng(42);
        let spec = MaSpec::new(Scenario::I, 12, draw_rho(3, &mut r), draw_rho(4, &mut r)).unwrap();
        let cov1 = exact_covariance(&spec, Group::One);
        let cov2 = exact_covariance(&spec, Group::Two);
        let mean_spec = MeanSpec::new(10.0, 0.0, AltCase::A, 12, &mut r).unwrap();
        let (mu1, mu2) = make_means(&mean_spec, &cov1, &cov2, &mut r).unwrap();
        assert_eq!(mu1, mu2);
        assert!(mu2.iter().all(|&v| (0.0..10.0).contains(&v)));
    }

    #[test]
    fn hand_calibrated_delta() {
        // tr(S1^2) + tr(S2^2) = 4 with p = 1 and Case A: delta = 1.
        let c = 2.0_f64.powf(0.25);
        let spec = MaSpec::new(Scenario::I, 1, vec![c], vec![c]).unwrap();
        let cov1 = exact_covariance(&spec, Group::One);
        let cov2 = exact_covariance(&spec, Group::Two);
        assert_relative_eq!(cov1.tr_sq() + cov2.tr_sq(), 4.0, max_relative = 1e-12);
        let mean_spec = MeanSpec::new(0.0, 0.5, AltCase::A, 1, &mut rng(43)).unwrap();
        let (mu1, mu2) = make_means(&mean_spec, &cov1, &cov2, &mut rng(44)).unwrap();
        assert_relative_eq!(mu1[0] - mu2[0], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn eta_round_trips_through_its_definition() {
        let mut r = rng(45);
        for (case, eta) in [(AltCase::A, 0.15), (AltCase::B, 0.35), (AltCase::B, 0.0)] {
            let p = 30;
            let spec = MaSpec::new(Scenario::II, p, draw_rho(3, &mut r), draw_rho(4, &mut r)).unwrap();
            let cov1 = exact_covariance(&spec, Group::One);
            let cov2 = exact_covariance(&spec, Group::Two);
            let mean_spec = MeanSpec::new(20.0, eta, case, p, &mut r).unwrap();
            let (mu1, mu2) = make_means(&mean_spec, &cov1, &cov2, &mut r).unwrap();
            let gap_sq: f64 = mu1.iter().zip(&mu2).map(|(a, b)| (a - b) * (a - b)).sum();
            let recovered = gap_sq / (cov1.tr_sq() + cov2.tr_sq()).sqrt();
            assert_relative_eq!(recovered, eta, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn empty_mask_with_positive_eta_is_invalid() {
        // Case B with p = 1 has floor(1/2) = 0 masked coordinates.
        let spec = MaSpec::new(Scenario::I, 1, vec![1.0], vec![1.0]).unwrap();
        let cov1 = exact_covariance(&spec, Group::One);
        let cov2 = exact_covariance(&spec, Group::Two);
        let mean_spec = MeanSpec::new(5.0, 0.2, AltCase::B, 1, &mut rng(46)).unwrap();
        assert!(matches!(
            make_means(&mean_spec, &cov1, &cov2, &mut rng(47)),
            Err(StatError::InvalidSpec(_))
        ));
    }

    #[test]
    fn generation_is_reproducible() {
        let mut r = rng(50);
        let spec = MaSpec::new(Scenario::II, 40, draw_rho(3, &mut r), draw_rho(4, &mut r)).unwrap();
        let mu = vec![1.0; 40];
        let a = gen_sample(&spec, Group::Two, &mu, 8, &mut rng(51));
        let b = gen_sample(&spec, Group::Two, &mu, 8, &mut rng(51));
        assert_eq!(a, b);
    }
}
