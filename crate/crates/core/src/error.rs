use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty sequence")]
    EmptySequence,
    #[error("missing index {0}")]
    MissingIndex(usize),
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("unknown error-term family {0:?}")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("invalid error term: {0}")]
    InvalidErrorTerm(String),
    #[error("horizon too short: need {needed}, have {available}")]
    HorizonTooShort { needed: usize, available: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("error term is identically zero on the horizon")]
    ZeroErrorTerm,
    #[error("horizon exhausted at {horizon} while realizing r_{index} = {target} ({covered} rationals covered)")]
    HorizonExhausted {
        horizon: usize,
        index: usize,
        target: String,
        covered: usize,
    },
    #[error("value out of machine range: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
