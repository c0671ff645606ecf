use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cohort is empty")]
    EmptyCohort,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("subject {id}: negative or NaN time {value}")]
    NegativeTime { id: String, value: f64 },

    #[error("epsilon must lie in (0, 1], got {0}")]
    EpsilonOutOfRange(f64),

    #[error("probability {value} at position {index} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error(
        "censoring survival is zero at T = {time} used by subject {id}; clamp it into G_eps first"
    )]
    ZeroCensoringWeight { id: String, time: f64 },

    #[error("prediction source covers {found} subjects, cohort has {expected}")]
    PredictionLength { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cohort is not usable here: {0}")]
    InvalidCohort(String),

    #[error("degenerate generator: {0}")]
    Degenerate(String),

    #[error("weibull tuning could not reach censoring rate {target} (closest {achieved})")]
    UnreachableRate { target: f64, achieved: f64 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("invalid configuration at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
