use thiserror::Error;

/// Errors shared across the state-vector, circuit and oracle layers.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("qubit count {0} outside supported range")]
    UnsupportedSize(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate qubit {0} in gate")]
    DuplicateQubit(usize),
    #[error("amplitude vector has norm {0}, not 1")]
    NotNormalized(f64),
    #[error("expected {expected} amplitudes, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operands act on different qubit counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("dense matrix too large for {0} qubits")]
    TooLarge(usize),
    #[error("length {0} is not a power of two")]
    BadLength(usize),
    #[error("eigendecomposition failed to converge")]
    EigenFailure,
}

pub type Result<T> = std::result::Result<T, Error>;
