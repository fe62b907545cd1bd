use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid possibility space: {0}")]
    InvalidSpace(String),

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("sequence product of size {size} exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u64 },

    #[error("assessment is inconsistent: the empty set belongs to its natural extension")]
    Inconsistent,

    #[error("invalid combination: {0}")]
    InvalidCombination(String),

    #[error("dominator does not dominate: {0}")]
    DominanceViolation(String),

    #[error("generators do not determine a coherent set of desirable gambles")]
    IncoherentD,

    #[error("invalid input: {0}")]
    Input(String),
}
