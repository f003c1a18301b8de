//! Monte Carlo experiments: configure, execute in parallel, summarize.
//!
//! One experiment fixes a data-generating configuration, draws the structure
//! quantities (MA coefficients, Case-B mask, common mean base) once from
//! dedicated streams, then runs replications in a work pool. Each
//! replication generates fresh data from streams keyed by `(seed, group,
//! rep)`, evaluates the enabled tests, and records numeric results or error
//! flags. Records land in a pre-sized, rep-indexed buffer and aggregation is
//! single-threaded over that buffer, so metrics are identical for any thread
//! count. Summaries are the mean-to-standard-deviation ratio of the
//! statistic (MDR), the ratio of the mean variance estimate to the Monte
//! Carlo variance (VR), and the rejection rate.

pub mod config;
pub mod output;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{cq_statistic, plugin_statistic};
use crate::fstest::{
    fs_statistic, variance_estimate, Group, ScalingMode, StatError, TestResult, TraceEstimates,
    TwoSample,
};
use crate::rng::{derive_rng, StreamPurpose};
use crate::simgen::{
    draw_rho, exact_covariance, gen_sample, make_means, AltCase, CovSummary, MaSpec, MeanSpec,
    Scenario,
};

/// MA orders of the two groups in the simulation design.
pub const MA_ORDER_GROUP1: usize = 3;
pub const MA_ORDER_GROUP2: usize = 4;

/// The tests the harness can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestKind {
    Fs,
    Cq,
    Plugin,
}

impl TestKind {
    pub const ALL: [TestKind; 3] = [TestKind::Fs, TestKind::Cq, TestKind::Plugin];

    pub fn name(self) -> &'static str {
        match self {
            TestKind::Fs => "fs",
            TestKind::Cq => "cq",
            TestKind::Plugin => "plugin",
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "fs" => Ok(TestKind::Fs),
            "cq" => Ok(TestKind::Cq),
            "plugin" => Ok(TestKind::Plugin),
            other => Err(format!("unknown test '{other}' (expected fs, cq or plugin)")),
        }
    }
}

/// Harness-level failures, mapped to CLI exit codes.
#[derive(Debug)]
pub enum HarnessError {
    /// Invalid configuration (exit code 1).
    Config(String),
    /// Every enabled test was flagged in every replication (exit code 2).
    AllReplicationsFlagged,
    /// Malformed CSV content (exit code 2).
    Csv(String),
    /// Empty table handed to the output stage (exit code 2).
    EmptyTable,
    /// Filesystem failure, with the offending path (exit code 3).
    Io { path: PathBuf, message: String },
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 1,
            HarnessError::AllReplicationsFlagged | HarnessError::Csv(_) | HarnessError::EmptyTable => 2,
            HarnessError::Io { .. } => 3,
        }
    }
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Config(msg) => write!(f, "configuration error: {msg}"),
            HarnessError::AllReplicationsFlagged => {
                write!(f, "every replication was flagged for every enabled test")
            }
            HarnessError::Csv(msg) => write!(f, "malformed CSV: {msg}"),
            HarnessError::EmptyTable => write!(f, "refusing to emit an empty table"),
            HarnessError::Io { path, message } => {
                write!(f, "I/O error at {}: {message}", path.display())
            }
        }
    }
}

impl std::error::Error for HarnessError {}

/// Full description of one Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n1: usize,
    pub n2: usize,
    pub p: usize,
    pub scenario: Scenario,
    pub lambda: f64,
    pub eta: f64,
    pub case: AltCase,
    pub alpha: f64,
    pub replications: usize,
    pub master_seed: u64,
    pub tests: Vec<TestKind>,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n1: 15,
            n2: 15,
            p: 100,
            scenario: Scenario::I,
            lambda: 10.0,
            eta: 0.0,
            case: AltCase::A,
            alpha: 0.05,
            replications: 1000,
            master_seed: 42,
            tests: TestKind::ALL.to_vec(),
            threads: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n1 < 6 || self.n2 < 6 {
            return Err(HarnessError::Config(format!(
                "sample sizes must be at least 6 (trace estimator precondition), got {} and {}",
                self.n1, self.n2
            )));
        }
        if self.p == 0 {
            return Err(HarnessError::Config("dimension p must be positive".into()));
        }
        if self.replications == 0 {
            return Err(HarnessError::Config("need at least one replication".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(HarnessError::Config(format!("alpha {} outside (0, 1)", self.alpha)));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(HarnessError::Config(format!("lambda {} must be nonnegative", self.lambda)));
        }
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return Err(HarnessError::Config(format!("eta {} must be nonnegative", self.eta)));
        }
        if self.tests.is_empty() {
            return Err(HarnessError::Config("enable at least one test".into()));
        }
        for (i, t) in self.tests.iter().enumerate() {
            if self.tests[..i].contains(t) {
                return Err(HarnessError::Config(format!("duplicate test '{t}'")));
            }
        }
        Ok(())
    }
}

/// Quantities drawn once per experiment and shared by every replication.
#[derive(Debug, Clone)]
pub struct ExperimentStructures {
    pub ma: MaSpec,
    pub mean_spec: MeanSpec,
    pub cov1: CovSummary,
    pub cov2: CovSummary,
    pub mu1: Vec<f64>,
    pub mu2: Vec<f64>,
}

/// Draw the per-experiment structure quantities from their dedicated
/// streams. All streams are keyed by the dimension, so a sweep over p
/// redraws them while sweeps over lambda or eta keep them fixed.
pub fn draw_structures(cfg: &ExperimentConfig) -> Result<ExperimentStructures, HarnessError> {
    let p64 = cfg.p as u64;
    let rho1 = draw_rho(
        MA_ORDER_GROUP1,
        &mut derive_rng(cfg.master_seed, StreamPurpose::RhoGroup1, p64, 0),
    );
    let rho2 = draw_rho(
        MA_ORDER_GROUP2,
        &mut derive_rng(cfg.master_seed, StreamPurpose::RhoGroup2, p64, 0),
    );
    let ma = MaSpec::new(cfg.scenario, cfg.p, rho1, rho2)
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let cov1 = exact_covariance(&ma, Group::One);
    let cov2 = exact_covariance(&ma, Group::Two);
    let mean_spec = MeanSpec::new(
        cfg.lambda,
        cfg.eta,
        cfg.case,
        cfg.p,
        &mut derive_rng(cfg.master_seed, StreamPurpose::Mask, p64, 0),
    )
    .map_err(|e| HarnessError::Config(e.to_string()))?;
    let (mu1, mu2) = make_means(
        &mean_spec,
        &cov1,
        &cov2,
        &mut derive_rng(cfg.master_seed, StreamPurpose::MeanBase, p64, 0),
    )
    .map_err(|e| HarnessError::Config(e.to_string()))?;
    Ok(ExperimentStructures { ma, mean_spec, cov1, cov2, mu1, mu2 })
}

/// Why a test produced no usable number in a replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    /// A studentizing denominator was non-positive or non-finite.
    Degenerate,
    /// The variance estimate of the statistic was not positive.
    NonPositiveVariance,
}

fn flag_of(err: &StatError) -> Flag {
    match err {
        StatError::NonPositiveVariance { .. } => Flag::NonPositiveVariance,
        _ => Flag::Degenerate,
    }
}

/// One test's outcome in one replication. Numeric fields are only present
/// when no flag fired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestOutcome {
    Valid { statistic: f64, variance_hat: f64, z: f64, reject: bool },
    Flagged(Flag),
}

impl TestOutcome {
    fn from_parts(
        statistic: Result<f64, StatError>,
        variance: &Result<f64, StatError>,
        alpha: f64,
    ) -> TestOutcome {
        let statistic = match statistic {
            Ok(s) => s,
            Err(e) => return TestOutcome::Flagged(flag_of(&e)),
        };
        let variance = match variance {
            Ok(v) => *v,
            Err(e) => return TestOutcome::Flagged(flag_of(e)),
        };
        match TestResult::from_statistic(statistic, variance, alpha) {
            Ok(r) => TestOutcome::Valid {
                statistic: r.statistic,
                variance_hat: r.variance_hat,
                z: r.z,
                reject: r.reject,
            },
            Err(e) => TestOutcome::Flagged(flag_of(&e)),
        }
    }
}

/// Outcomes of all enabled tests for one replication.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationRecord {
    pub rep: usize,
    pub outcomes: Vec<(TestKind, TestOutcome)>,
}

impl ReplicationRecord {
    pub fn outcome(&self, test: TestKind) -> Option<&TestOutcome> {
        self.outcomes.iter().find(|(t, _)| *t == test).map(|(_, o)| o)
    }
}

/// Generate one replication's data and evaluate every enabled test.
/// Errors never abort the experiment; they become flags on the record.
pub fn run_replication(
    cfg: &ExperimentConfig,
    structures: &ExperimentStructures,
    rep: usize,
) -> ReplicationRecord {
    let mut rng1 = derive_rng(cfg.master_seed, StreamPurpose::DataGroup1, rep as u64, 0);
    let sample1 = gen_sample(&structures.ma, Group::One, &structures.mu1, cfg.n1, &mut rng1);
    let mut rng2 = derive_rng(cfg.master_seed, StreamPurpose::DataGroup2, rep as u64, 0);
    let sample2 = gen_sample(&structures.ma, Group::Two, &structures.mu2, cfg.n2, &mut rng2);
    let ts = TwoSample::new(sample1, sample2).expect("generated samples share p");
    ReplicationRecord { rep, outcomes: evaluate_tests(&ts, &cfg.tests, cfg.alpha) }
}

/// Evaluate the requested tests on one data set, sharing the studentized
/// trace estimates between the FS and PA-surrogate tests.
pub fn evaluate_tests(
    ts: &TwoSample,
    tests: &[TestKind],
    alpha: f64,
) -> Vec<(TestKind, TestOutcome)> {
    let n1 = ts.sample1.n();
    let n2 = ts.sample2.n();
    let wants_studentized =
        tests.iter().any(|t| matches!(t, TestKind::Fs | TestKind::Plugin));
    let studentized_var: Result<f64, StatError> = if wants_studentized {
        TraceEstimates::estimate(ts, ScalingMode::Studentized)
            .map(|tr| variance_estimate(&tr, n1, n2))
    } else {
        Ok(f64::NAN) // never read
    };
    let identity_var: Result<f64, StatError> = if tests.contains(&TestKind::Cq) {
        TraceEstimates::estimate(ts, ScalingMode::Identity)
            .map(|tr| variance_estimate(&tr, n1, n2))
    } else {
        Ok(f64::NAN)
    };

    tests
        .iter()
        .map(|&test| {
            let outcome = match test {
                TestKind::Fs => TestOutcome::from_parts(fs_statistic(ts), &studentized_var, alpha),
                TestKind::Cq => TestOutcome::from_parts(cq_statistic(ts), &identity_var, alpha),
                TestKind::Plugin => {
                    TestOutcome::from_parts(plugin_statistic(ts), &studentized_var, alpha)
                }
            };
            (test, outcome)
        })
        .collect()
}

/// Per-test summary over the valid replications of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct TestMetrics {
    pub test: TestKind,
    /// Monte Carlo mean of the statistic over its Monte Carlo standard
    /// deviation; absent with fewer than two valid replications.
    pub mdr: Option<f64>,
    /// Mean variance estimate over the Monte Carlo variance of the
    /// statistic; absent with fewer than two valid replications.
    pub vr: Option<f64>,
    /// Rejection fraction among valid replications (empirical size under the
    /// null, power under an alternative); absent with no valid replication.
    pub rate: Option<f64>,
    pub n_valid: usize,
    pub n_flagged: usize,
}

/// Summaries of one experiment, one entry per enabled test.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub tests: Vec<TestMetrics>,
}

impl MetricsRecord {
    pub fn metrics(&self, test: TestKind) -> Option<&TestMetrics> {
        self.tests.iter().find(|m| m.test == test)
    }
}

/// Aggregate records in replication order. Flagged replications are counted
/// separately and excluded from every metric denominator.
pub fn summarize(cfg: &ExperimentConfig, records: &[ReplicationRecord]) -> MetricsRecord {
    let tests = cfg
        .tests
        .iter()
        .map(|&test| {
            let mut stats = Vec::with_capacity(records.len());
            let mut vars = Vec::with_capacity(records.len());
            let mut rejects = 0usize;
            let mut flagged = 0usize;
            for record in records {
                match record.outcome(test) {
                    Some(TestOutcome::Valid { statistic, variance_hat, reject, .. }) => {
                        stats.push(*statistic);
                        vars.push(*variance_hat);
                        if *reject {
                            rejects += 1;
                        }
                    }
                    Some(TestOutcome::Flagged(_)) => flagged += 1,
                    None => {}
                }
            }
            let n_valid = stats.len();
            let (mdr, vr) = if n_valid >= 2 {
                let mc_var = crate::util::sample_variance(&stats);
                let sd = mc_var.sqrt();
                let mean_stat = crate::util::mean(&stats);
                let mean_var = crate::util::mean(&vars);
                (
                    if sd > 0.0 { Some(mean_stat / sd) } else { None },
                    if mc_var > 0.0 { Some(mean_var / mc_var) } else { None },
                )
            } else {
                (None, None)
            };
            let rate = if n_valid > 0 { Some(rejects as f64 / n_valid as f64) } else { None };
            TestMetrics { test, mdr, vr, rate, n_valid, n_flagged: flagged }
        })
        .collect();
    MetricsRecord { tests }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| HarnessError::Config(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Run one experiment, returning the raw per-replication records along with
/// the summary. Replications execute in the work pool; the record buffer is
/// ordered by replication index.
pub fn run_experiment_records(
    cfg: &ExperimentConfig,
) -> Result<(Vec<ReplicationRecord>, MetricsRecord), HarnessError> {
    cfg.validate()?;
    let structures = draw_structures(cfg)?;
    let records: Vec<ReplicationRecord> = with_pool(cfg.threads, || {
        (0..cfg.replications)
            .into_par_iter()
            .map(|rep| run_replication(cfg, &structures, rep))
            .collect()
    })?;
    let metrics = summarize(cfg, &records);
    if metrics.tests.iter().all(|m| m.n_valid == 0) {
        return Err(HarnessError::AllReplicationsFlagged);
    }
    Ok((records, metrics))
}

/// Run one experiment and return its summary.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<MetricsRecord, HarnessError> {
    run_experiment_records(cfg).map(|(_, metrics)| metrics)
}

/// Which configuration field a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    P,
    Lambda,
    Eta,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::P => "p",
            SweepAxis::Lambda => "lambda",
            SweepAxis::Eta => "eta",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "p" => Ok(SweepAxis::P),
            "lambda" => Ok(SweepAxis::Lambda),
            "eta" => Ok(SweepAxis::Eta),
            other => Err(format!("unknown axis '{other}' (expected p, lambda or eta)")),
        }
    }
}

/// One CSV row: a sweep point and one test's metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub test: TestKind,
    pub mdr: Option<f64>,
    pub vr: Option<f64>,
    pub rate: Option<f64>,
    pub n_valid: usize,
    pub n_flagged: usize,
    pub seed: u64,
}

/// The result table of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

fn apply_axis(cfg: &mut ExperimentConfig, axis: SweepAxis, value: f64) -> Result<(), HarnessError> {
    match axis {
        SweepAxis::P => {
            if value.fract() != 0.0 || value < 1.0 || value > usize::MAX as f64 {
                return Err(HarnessError::Config(format!(
                    "p sweep values must be positive integers, got {value}"
                )));
            }
            cfg.p = value as usize;
        }
        SweepAxis::Lambda => cfg.lambda = value,
        SweepAxis::Eta => cfg.eta = value,
    }
    Ok(())
}

/// Run one experiment per sweep value, one row per enabled test.
///
/// Structure quantities are keyed by the dimension, so only a p sweep
/// redraws them. A point whose replications are all flagged contributes
/// flagged rows instead of aborting the sweep.
pub fn run_sweep(
    base: &ExperimentConfig,
    axis: SweepAxis,
    values: &[f64],
) -> Result<SweepTable, HarnessError> {
    if values.is_empty() {
        return Err(HarnessError::Config("sweep needs at least one value".into()));
    }
    let mut rows = Vec::with_capacity(values.len() * base.tests.len());
    for &value in values {
        let mut cfg = base.clone();
        apply_axis(&mut cfg, axis, value)?;
        match run_experiment(&cfg) {
            Ok(metrics) => {
                for m in &metrics.tests {
                    rows.push(SweepRow {
                        axis_value: value,
                        test: m.test,
                        mdr: m.mdr,
                        vr: m.vr,
                        rate: m.rate,
                        n_valid: m.n_valid,
                        n_flagged: m.n_flagged,
                        seed: cfg.master_seed,
                    });
                }
            }
            Err(HarnessError::AllReplicationsFlagged) => {
                for &test in &cfg.tests {
                    rows.push(SweepRow {
                        axis_value: value,
                        test,
                        mdr: None,
                        vr: None,
                        rate: None,
                        n_valid: 0,
                        n_flagged: cfg.replications,
                        seed: cfg.master_seed,
                    });
                }
            }
            Err(other) => return Err(other),
        }
    }
    Ok(SweepTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            p: 12,
            replications: 8,
            master_seed: 7,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn config_validation_catches_bad_fields() {
        let mut cfg = small_config();
        cfg.n1 = 5;
        assert!(matches!(cfg.validate(), Err(HarnessError::Config(_))));
        cfg = small_config();
        cfg.alpha = 1.2;
        assert!(cfg.validate().is_err());
        cfg = small_config();
        cfg.tests = vec![TestKind::Fs, TestKind::Fs];
        assert!(cfg.validate().is_err());
        cfg = small_config();
        cfg.replications = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn replications_are_deterministic() {
        let cfg = small_config();
        let st = draw_structures(&cfg).unwrap();
        let a = run_replication(&cfg, &st, 3);
        let b = run_replication(&cfg, &st, 3);
        assert_eq!(a, b);
        let c = run_replication(&cfg, &st, 4);
        assert_ne!(a.outcomes, c.outcomes);
    }

    #[test]
    fn structures_depend_on_dimension_only() {
        let cfg = small_config();
        let mut lam = small_config();
        lam.lambda = 50.0;
        let a = draw_structures(&cfg).unwrap();
        let b = draw_structures(&lam).unwrap();
        // Same coefficient draws and mask; the mean base scales with lambda.
        assert_eq!(a.ma, b.ma);
        assert_eq!(a.mean_spec.mask(), b.mean_spec.mask());
        for (x, y) in a.mu2.iter().zip(&b.mu2) {
            approx::assert_relative_eq!(y / x, 5.0, max_relative = 1e-12);
        }

        let mut bigger = small_config();
        bigger.p = 13;
        let c = draw_structures(&bigger).unwrap();
        assert_ne!(a.ma.rho(Group::One), c.ma.rho(Group::One));
    }

    #[test]
    fn structure_draws_are_reproducible() {
        let cfg = small_config();
        let a = draw_structures(&cfg).unwrap();
        let b = draw_structures(&cfg).unwrap();
        assert_eq!(a.ma, b.ma);
        assert_eq!(a.mean_spec, b.mean_spec);
        assert_eq!(a.mu1, b.mu1);
        assert_eq!(a.mu2, b.mu2);
    }

    #[test]
    fn degenerate_data_is_flagged_not_fatal() {
        // A coordinate constant in both samples degenerates the studentized
        // tests but the record is still produced; CQ remains valid.
        use crate::fstest::Sample;
        let n = 8;
        let p = 3;
        let make = |seed: u64| {
            let mut rng = derive_rng(seed, StreamPurpose::DataGroup1, 0, 0);
            use rand::Rng;
            let data: Vec<f64> = (0..n * p)
                .map(|idx| if idx % p == 0 { 2.5 } else { rng.random::<f64>() })
                .collect();
            Sample::new(n, p, data).unwrap()
        };
        let ts = TwoSample::new(make(1), make(2)).unwrap();
        let outcomes = evaluate_tests(&ts, &TestKind::ALL, 0.05);
        assert!(matches!(
            outcomes[0],
            (TestKind::Fs, TestOutcome::Flagged(Flag::Degenerate))
        ));
        assert!(matches!(outcomes[1], (TestKind::Cq, TestOutcome::Valid { .. })));
        assert!(matches!(
            outcomes[2],
            (TestKind::Plugin, TestOutcome::Flagged(Flag::Degenerate))
        ));
    }

    #[test]
    fn single_replication_has_no_dispersion_metrics() {
        let mut cfg = small_config();
        cfg.replications = 1;
        let metrics = run_experiment(&cfg).unwrap();
        for m in &metrics.tests {
            assert_eq!(m.mdr, None);
            assert_eq!(m.vr, None);
            let rate = m.rate.unwrap();
            assert!(rate == 0.0 || rate == 1.0);
            assert_eq!(m.n_valid + m.n_flagged, 1);
        }
    }

    #[test]
    fn experiment_metrics_are_thread_count_independent() {
        let mut one = small_config();
        one.threads = Some(1);
        let mut four = small_config();
        four.threads = Some(4);
        let a = run_experiment(&one).unwrap();
        let b = run_experiment(&four).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_emits_one_row_per_value_per_test() {
        let mut cfg = small_config();
        cfg.tests = vec![TestKind::Fs, TestKind::Cq];
        let table = run_sweep(&cfg, SweepAxis::Eta, &[0.0, 0.2]).unwrap();
        assert_eq!(table.rows.len(), 4);
        assert_eq!(table.rows[0].axis_value, 0.0);
        assert_eq!(table.rows[0].test, TestKind::Fs);
        assert_eq!(table.rows[3].test, TestKind::Cq);
        assert!(table.rows.iter().all(|r| r.seed == cfg.master_seed));
    }

    #[test]
    fn sweep_rejects_fractional_dimensions() {
        let cfg = small_config();
        assert!(matches!(
            run_sweep(&cfg, SweepAxis::P, &[12.5]),
            Err(HarnessError::Config(_))
        ));
    }

    #[test]
    fn power_dominates_size_on_an_eta_sweep() {
        let mut cfg = ExperimentConfig {
            p: 50,
            replications: 400,
            master_seed: 11,
            scenario: Scenario::II,
            tests: vec![TestKind::Fs],
            ..ExperimentConfig::default()
        };
        cfg.lambda = 10.0;
        let table = run_sweep(&cfg, SweepAxis::Eta, &[0.0, 0.15]).unwrap();
        let size = table.rows[0].rate.unwrap();
        let power = table.rows[1].rate.unwrap();
        assert!(
            power >= size - 0.02,
            "power {power} fell below size {size} beyond Monte Carlo slack"
        );
    }
}
