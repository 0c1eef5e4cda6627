use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field too large: {p}^{k}")]
    FieldTooLarge { p: u32, k: usize },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed F_{p}^{from} into F_{p}^{to}")]
    NoEmbedding { p: u32, from: usize, to: usize },
    #[error("characteristic {p} divides {n}")]
    NotSemisimple { p: u32, n: u64 },
    #[error("reciprocal undefined: {0}")]
    Reciprocal(&'static str),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed ideal: {0}")]
    MalformedIdeal(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("containment violated: {0}")]
    Containment(String),
    #[error("internal consistency check failed: {0}")]
    Verification(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
