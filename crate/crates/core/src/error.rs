use thiserror::Error;

/// Errors raised by the cube primitives and file formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("letter {0} is not in {{1,2,3}}")]
    BadLetter(u8),
    #[error("word length must be positive")]
    EmptyWord,
    #[error("rank {rank} out of range for n={n} (must be < 3^{n})")]
    RankOutOfRange { rank: usize, n: usize },
    #[error("dimension n={0} is too large")]
    DimensionTooLarge(usize),
    #[error("length mismatch: expected n={expected}, got n={got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid line: {0}")]
    InvalidLine(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid breakpoint set: {0}")]
    InvalidBreakpoints(String),
    #[error("colour {0} is not in {{0,1}}")]
    BadColour(u8),
    #[error("malformed colouring file: {0}")]
    Format(String),
}

pub type Result<T, E = CubeError> = std::result::Result<T, E>;
