use thiserror::Error;

/// Errors raised by gate validation, spectral routines and the bound checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not unitary: |G^dag G - I|_F = {deviation:.3e} exceeds {limit:.3e}")]
    NotUnitary { deviation: f64, limit: f64 },

    #[error("matrix is not Hermitian: |H - H^dag|_F = {deviation:.3e} exceeds {limit:.3e}")]
    NotHermitian { deviation: f64, limit: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("bad gate parameters: {0}")]
    BadParams(String),

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("invalid shape function: {0}")]
    BadShape(String),

    #[error("norm order p must be >= 1 (got {0})")]
    BadP(f64),

    #[error("state is not normalized: |psi| = {0}")]
    NormError(f64),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("not an allowed protocol: {reason} (fidelity {fidelity:.12})")]
    NotAllowedProtocol { fidelity: f64, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
