//! High-dimensional two-sample location testing under unequal covariances,
//! with the simulation machinery needed to study size and power at desk scale.
//!
//! The crate is organized around four pieces:
//!
//! * [`fstest`] - the studentized mean-difference statistic with leave-two-out
//!   per-coordinate variances, its trace-based variance estimator, and the
//!   one-sided normal-approximation decision (the FS test).
//! * [`baselines`] - comparison statistics: the identity-scaled CQ statistic,
//!   a PA-surrogate with three leave-out pooled-variance denominators, and the
//!   analytical PA bias evaluator.
//! * [`simgen`] - a moving-average data generator with exactly known banded
//!   covariances and signal-strength-calibrated mean vectors.
//! * [`harness`] - reproducible parallel Monte Carlo experiments and sweeps,
//!   summarized as MDR / VR / rejection-rate tables with CSV and SVG output.

pub mod baselines;
pub mod fstest;
pub mod harness;
pub mod rng;
pub mod simgen;

pub(crate) mod util;

pub use fstest::{Group, Sample, StatError, TestResult, TwoSample};
