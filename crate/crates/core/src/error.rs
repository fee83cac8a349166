use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("density matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("density matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("duplicate qubit index {0}")]
    DuplicateQubit(usize),
    #[error("qubit subset must be nonempty")]
    EmptySubset,
    #[error("focus subset must be a proper, nonempty subset of the qubits")]
    ImproperFocus,
    #[error("pure-state shortcut needs a single-qubit focus, got {0} qubits")]
    MultiQubitFocus(usize),
    #[error("expected a {expected}-qubit state, got {got} qubits")]
    WrongQubitCount { expected: usize, got: usize },
    #[error("exponent mu3 must be finite and > 0, got {0}")]
    InvalidExponent(f64),
    #[error("residual {0:e} is negative; strong monogamy score not applicable")]
    NegativeResidual(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sample {index}: {source}")]
    Sample { index: u64, source: Box<Error> },
    #[error("no sign change of the score in bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("score is not applicable at this point: {0}")]
    NotApplicable(String),
    #[error("score is not monotone in mu3 here (third-order residual {0} outside [0, 1])")]
    NotMonotone(f64),
    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
