use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sequence is empty")]
    EmptySequence,
    #[error("exponent must be positive, got {0}")]
    NonPositiveExponent(f64),
    #[error("constant exponent must lie in (0, 1), got {0}")]
    ConstantOutOfRange(f64),
    #[error("exponent {name} is undefined for n = {n} (needs n >= 4)")]
    ThresholdUndefined { name: &'static str, n: usize },
    #[error("degree {value} out of range [0, {max}] for n = {n}")]
    DegreeOutOfRange { value: u32, max: u32, n: usize },
    #[error("n = {n} exceeds the realization oracle bound {bound}")]
    OracleBound { n: usize, bound: usize },
    #[error("n = {0} is too small (theorem checks require n >= {1})")]
    TooSmall(usize, usize),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("shard count must be at least 1")]
    ZeroShards,
    #[error("domain has {domain_size} candidate sequences, above the budget of {budget}")]
    OverBudget { domain_size: u128, budget: u128 },
    #[error("exchange needs a_i - a_j >= 2, got a_i = {a_i}, a_j = {a_j}")]
    ExchangeGap { a_i: u64, a_j: u64 },
    #[error("degree label {0} must be in 1..=4")]
    BadDegreeLabel(usize),
    #[error("cannot parse exponent `{0}`")]
    BadExponent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
