//! Shared fixtures for the acceptance suite: cached heavy Monte Carlo runs
//! and small statistical helpers.

use std::sync::OnceLock;

use hdbf::fstest::upper_tail_p;
use hdbf::harness::{
    run_experiment, run_experiment_records, ExperimentConfig, MetricsRecord, ReplicationRecord,
    TestKind, TestOutcome,
};
use hdbf::simgen::Scenario;

/// Seed for the common-shift contrast runs. The plugin bias scales with the
/// squared gap between the two groups' drawn MA coefficient norms, so the
/// contrast experiment pins a draw where the groups' scales clearly differ
/// (the heteroscedastic design the scenario is about).
pub const SHIFT_SEED: u64 = 2;

/// Seed for the size / VR / normality grid.
pub const SIZE_SEED: u64 = 42;

/// Seed for the power study.
pub const POWER_SEED: u64 = 42;

/// Scenario II, p = 200, n = 15, eta = 0, R = 2000, FS + plugin, at the
/// given common-shift scale. Cached: criteria 3 and 4 share these runs.
pub fn shift_run(lambda_high: bool) -> &'static MetricsRecord {
    static LOW: OnceLock<MetricsRecord> = OnceLock::new();
    static HIGH: OnceLock<MetricsRecord> = OnceLock::new();
    let (cell, lambda) = if lambda_high { (&HIGH, 50.0) } else { (&LOW, 10.0) };
    cell.get_or_init(|| {
        let cfg = ExperimentConfig {
            p: 200,
            scenario: Scenario::II,
            lambda,
            replications: 2000,
            master_seed: SHIFT_SEED,
            tests: vec![TestKind::Fs, TestKind::Plugin],
            ..ExperimentConfig::default()
        };
        run_experiment(&cfg).expect("shift run")
    })
}

/// Null (eta = 0, lambda = 10) FS-only run with records, R = 2000, for the
/// size / VR / normality criteria. Cached per (scenario, p).
pub fn null_run(
    scenario: Scenario,
    p: usize,
) -> &'static (Vec<ReplicationRecord>, MetricsRecord) {
    static I100: OnceLock<(Vec<ReplicationRecord>, MetricsRecord)> = OnceLock::new();
    static I200: OnceLock<(Vec<ReplicationRecord>, MetricsRecord)> = OnceLock::new();
    static II100: OnceLock<(Vec<ReplicationRecord>, MetricsRecord)> = OnceLock::new();
    static II200: OnceLock<(Vec<ReplicationRecord>, MetricsRecord)> = OnceLock::new();
    let cell = match (scenario, p) {
        (Scenario::I, 100) => &I100,
        (Scenario::I, 200) => &I200,
        (Scenario::II, 100) => &II100,
        (Scenario::II, 200) => &II200,
        other => panic!("no cached null run for {other:?}"),
    };
    cell.get_or_init(|| {
        let cfg = ExperimentConfig {
            p,
            scenario,
            replications: 2000,
            master_seed: SIZE_SEED,
            tests: vec![TestKind::Fs],
            ..ExperimentConfig::default()
        };
        run_experiment_records(&cfg).expect("null run")
    })
}

/// Standardized FS values of the valid replications.
pub fn valid_z_values(records: &[ReplicationRecord], test: TestKind) -> Vec<f64> {
    records
        .iter()
        .filter_map(|r| match r.outcome(test) {
            Some(TestOutcome::Valid { z, .. }) => Some(*z),
            _ => None,
        })
        .collect()
}

/// Kolmogorov-Smirnov distance between a sample and the standard normal.
pub fn ks_statistic_standard_normal(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &z) in sorted.iter().enumerate() {
        let cdf = 1.0 - upper_tail_p(z);
        d = d.max(cdf - i as f64 / n).max((i + 1) as f64 / n - cdf);
    }
    d
}

/// Asymptotic 1% critical value of the Kolmogorov distribution, scaled to
/// sample size n: K_{0.01} / sqrt(n) with K_{0.01} = 1.62762.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.62762 / (n as f64).sqrt()
}
