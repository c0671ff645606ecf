//! Concordance measures for right-censored survival models.
//!
//! The crate provides Harrell's and Uno's C-index at a fixed time, Antolini's
//! time-dependent concordance and its IPCW-weighted counterpart
//! ([`concordance::td_uno`]), reverse Kaplan–Meier estimation of the
//! censoring distribution, Gompertz cohort generators with their closed-form
//! survival curves, and a replication harness for bias studies.

// `!(x > 0.0)` style checks are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod censoring;
pub mod cohort;
pub mod concordance;
pub mod datagen;
pub mod error;
pub mod io;
pub mod oracle;
pub mod predictions;
pub mod sim;

pub use censoring::{reverse_km, true_g_discrete, StepSurvival, DEFAULT_EPSILON};
pub use cohort::{Cohort, Subject, TimeGrid, Violation, ViolationKind};
pub use concordance::{
    antolini_ctd, decompose, harrell_fixed_t, population_c, td_uno, uno_fixed_t, Decomposition,
    EstimatorOptions, MetricReport, TieMode, WeightPoint,
};
pub use error::{Error, Result};
pub use oracle::{OracleModel, OraclePredictions};
pub use predictions::{Predictions, SurvivalMatrix, SurvivalModel};
