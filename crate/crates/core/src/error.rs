use thiserror::Error;

use crate::script::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    ZeroInput(String),
    #[error("the unit ideal has no dimension (empty scheme)")]
    UnitIdeal,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,
    #[error("no family parameter declared")]
    NoParameter,
    #[error("no direction variables declared")]
    NoDirections,
    #[error("degenerate family: {0}")]
    DegenerateFamily(String),
    #[error("invalid test ideal: {0}")]
    InvalidTestIdeal(String),
    #[error("resource limit exceeded: {0}")]
    ResourceExhausted(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}
