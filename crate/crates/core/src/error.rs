use alloc::string::String;

use crate::rational::Rational;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate element {0}")]
    DuplicateElement(Rational),
    #[error("empty input where a nonempty set is required")]
    Empty,
    #[error("set too small: need at least {need} elements, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("point map has no value for {0}")]
    IncompleteMap(Rational),
    #[error("invalid point map: {0}")]
    InvalidMap(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid sigma: {0}")]
    InvalidSigma(String),
    #[error("invalid block count {t} for a sumset of size {m}")]
    InvalidBlockCount { t: usize, m: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Eulerian listing needs an odd-sized set, got {0} elements")]
    NeedOddSize(usize),
    #[error("width budget {budget} is below the minimum {minimum}")]
    BudgetTooSmall { budget: u64, minimum: u64 },
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
}
