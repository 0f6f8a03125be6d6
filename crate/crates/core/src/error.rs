use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} is outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("max ratio needs at least two sets, got {0}")]
    TooFewSets(usize),
    #[error("instance is empty")]
    EmptyInstance,
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weight at index {0} must be strictly positive")]
    NonPositiveWeight(usize),
    #[error("weight at index {0} must be an integer")]
    NonIntegerWeight(usize),
    #[error("pivot {pivot} is outside 1..={len}")]
    PivotOutOfRange { pivot: usize, len: usize },
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(Rational),
    #[error("factor r must be at least 1, got {0}")]
    FactorBelowOne(Rational),
    #[error("instance has {n} pairs, above the oracle limit of {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("dynamic-programming table of {0} cells is too large")]
    TableTooLarge(u128),
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
