use thiserror::Error;

use crate::iteration::IterationTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("0^0 is undefined")]
    UndefinedPower,
    #[error("iterate must be positive, got {0}")]
    NonPositiveIterate(String),
    #[error("radicand must be positive, got {0}")]
    NonPositiveRadicand(String),
    #[error("root degree must be at least 1, got {0}")]
    InvalidDegree(i64),
    #[error("derivative vanishes at x = {0}; Newton step undefined")]
    ZeroDerivative(String),
    #[error("no convergence after {} iterates", .0.len())]
    NonConvergence(Box<IterationTrace>),
    #[error("fewer than 3 iterates inside the quadratic basin; order undetermined")]
    InsufficientIterates,
    #[error("sexagesimal digit {0} outside 0..=59")]
    InvalidDigit(u32),
    #[error("invalid stopping rule: {0}")]
    InvalidStoppingRule(&'static str),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: &'static str) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason,
        }
    }

    /// The partial trace carried by a non-convergence error.
    pub fn partial_trace(&self) -> Option<&IterationTrace> {
        match self {
            Error::NonConvergence(trace) => Some(trace),
            _ => None,
        }
    }
}
