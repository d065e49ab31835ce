use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),

    #[error("objects live in different variable contexts")]
    ContextMismatch,

    #[error("coefficient {coefficient} is not {p}-integral")]
    DenominatorDivisibleByP { coefficient: String, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("negative exponent on variable {0}, which is not Laurent")]
    LaurentNotAllowed(String),

    #[error("sum of (beta_i + 1)/d = {0} is not a positive integer")]
    NotIntegral(String),

    #[error("connection matrix does not satisfy dB = B ^ B: {0}")]
    NotIntegrable(String),

    #[error("inconsistent Hodge blocks: {0}")]
    BlockSizes(String),

    #[error("Griffiths transversality violated by block ({row}, {col})")]
    Transversality { row: usize, col: usize },

    #[error("argument {0} outside the supported domain")]
    OutOfDomain(String),

    #[error("target {0} outside the attainable range")]
    TargetOutOfRange(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
