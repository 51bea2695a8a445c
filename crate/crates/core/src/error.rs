use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid qubit count {n}: {reason}")]
    InvalidQubitCount { n: usize, reason: &'static str },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("qubit {qubit} out of range for a {n}-qubit register")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("gate acts twice on qubit {0}")]
    SameQubit(usize),

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("phase has modulus {modulus}, expected 1")]
    NotUnitModulus { modulus: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid pair ({n}, {m}) for {size} qubits")]
    InvalidPair { n: usize, m: usize, size: usize },

    #[error("invalid rotation index: {0}")]
    InvalidRotationIndex(String),

    #[error("singular sign matrix for N={n}")]
    SingularSignMatrix { n: usize },

    #[error("time solve failed: {0}")]
    Solver(String),

    #[error("banged schedule needs delta_t > 0, got {0}")]
    InvalidDeltaT(f64),

    #[error("invalid noise configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid vertex permutation: {0}")]
    InvalidPermutation(String),

    #[error("path index k={k} out of range for L={size}")]
    InvalidPathIndex { k: usize, size: usize },

    #[error("complete-graph cover failed for L={size}: edge ({a}, {b}) {problem}")]
    CoverFailure {
        size: usize,
        a: usize,
        b: usize,
        problem: &'static str,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("not implemented: {0}")]
    NotImplemented(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True when the error stems from bad user input rather than a
    /// numerical or runtime failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Solver(_) | Error::VerificationFailed(_) | Error::CoverFailure { .. }
        )
    }
}
