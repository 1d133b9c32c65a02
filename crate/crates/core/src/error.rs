use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("odd dimension {0}; an even dimension is required")]
    OddDimension(usize),
    #[error("wrong form degree: expected {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("expected {expected} argument vectors, found {found}")]
    ArgumentCount { expected: usize, found: usize },
    #[error("pole on the real axis")]
    RealAxisPole,
    #[error("integrand does not decay quadratically at infinity")]
    InsufficientDecay,
    #[error("empty operator word")]
    EmptyWord,
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
