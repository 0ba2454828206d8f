use thiserror::Error;

/// Errors raised by estimators, samplers and the experiment harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("invalid k: {k} (sample size {n}, need 1 <= k <= n - 1)")]
    InvalidK { k: usize, n: usize },

    #[error("log-transform undefined: threshold {threshold} is not positive")]
    LogUndefined { threshold: f64 },

    #[error("no exceedances above the threshold")]
    NoExceedances,

    #[error("moment estimator undefined: second log-moment equals squared first log-moment")]
    MomentUndefined,

    #[error("degenerate control variate: zero variance")]
    DegenerateControlVariate,

    #[error("degenerate denominator in ratio estimate")]
    DegenerateDenominator,

    #[error("degenerate covariance structure between control variates")]
    DegenerateCovariance,

    #[error("tail dependence too weak to estimate: {joint} joint exceedances")]
    WeakTailDependence { joint: usize },

    #[error("unstable configuration: {failed} of {total} replications failed")]
    UnstableConfiguration { failed: usize, total: usize },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
