use thiserror::Error;

/// Errors raised by ring arithmetic, series bookkeeping and the checks built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient is not exact in {0}")]
    NotDivisible(String),
    #[error("ring does not embed into the complex numbers: {0}")]
    NotEmbeddable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("truncation order exhausted: {0}")]
    OrderExhausted(String),
    #[error("requested order {requested} exceeds available order {available}")]
    OrderExceeded { requested: usize, available: usize },
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("index out of range: {0}")]
    BadRange(String),
    #[error("empty input sequence")]
    EmptyInput,
    #[error("leading term is zero; the sequence lies in the null space")]
    ZeroLeadingTerm,
    #[error("set is not closed under the group law: {0}")]
    NotClosed(String),
    #[error("base point not supported for this vector field: {0}")]
    UnsupportedBasePoint(String),
    #[error("operation not available for vector field kind {0}")]
    UnsupportedKind(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
