use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field of size {p}^{m} exceeds the 2^16 cap")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("malformed modulus: {0}")]
    MalformedModulus(String),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("element {0} does not belong to this field")]
    FieldMismatch(u32),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("cannot parse element {token:?}: {reason}")]
    ParseElement { token: String, reason: String },
    #[error("cannot parse field description {0:?}")]
    ParseField(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("repeated point at positions {0} and {1}")]
    RepeatedPoint(usize, usize),
    #[error("zero element where a nonzero one is required: {0}")]
    ZeroElement(String),
    #[error("the zero matrix spans no code")]
    ZeroMatrix,
    #[error("extension vector is zero")]
    ZeroExtension,
    #[error("the zero code has no minimum distance")]
    EmptyCode,
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
    #[error("budget exceeded: {what} needs {needed}, limit {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cross-check disagreement: {0}")]
    CrossCheck(String),
    #[error("leader-weight dump: {0}")]
    Dump(String),
}
