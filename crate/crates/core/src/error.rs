use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown Cartan family '{0}'")]
    UnknownFamily(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("matrix is not additively skew-symmetric: {0}")]
    NotSkewSymmetric(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("ambient word does not represent the given element")]
    WordMismatch,
    #[error("element is not below w in the Bruhat order")]
    NotBelow,
    #[error("height {height} outside the admissible range {min}..={max}")]
    InvalidHeight { height: usize, min: usize, max: usize },
    #[error("Cauchon bijection violated: {0}")]
    BijectionViolation(String),
    #[error("Bruhat interval exceeds {limit} elements")]
    IntervalTooLarge { limit: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
