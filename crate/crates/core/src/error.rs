use thiserror::Error;

use crate::gumbel::ModelParams;
use crate::sampler::Case;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the function.
    #[error("domain error: {what} = {value} ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("observation times are not strictly increasing at index {index}")]
    NotStrictlyIncreasing { index: usize },

    /// The sample carries no information about at least one parameter.
    #[error("{param} unidentifiable for {case:?} samples")]
    Unidentifiable { param: &'static str, case: Case },

    #[error("too few failures ({r}) to fit three parameters")]
    TooFewFailures { r: usize },

    #[error("Newton-Raphson did not converge after {iterations} iterations (|score|_inf = {score_norm:e})")]
    NoConvergence {
        last: ModelParams,
        iterations: usize,
        score_norm: f64,
    },

    #[error("observed information is singular or not positive definite")]
    SingularInformation,

    #[error("non-positive variance for {param}")]
    NonPositiveVariance { param: &'static str },

    #[error("invalid sampler configuration: {0}")]
    InvalidSampler(String),

    #[error("invalid interval request: {0}")]
    InvalidInterval(String),

    #[error("study aborted: {resamples} resamples for {replicates} replicates exceeds the 20% limit")]
    ExcessiveResampling { resamples: usize, replicates: usize },

    #[error("{0}")]
    Config(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("no observations")]
    Empty,

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Numerical failures (as opposed to invalid input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::SingularInformation
                | Error::NonPositiveVariance { .. }
                | Error::ExcessiveResampling { .. }
        )
    }

    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            expected,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
