use thiserror::Error;

/// Errors produced by the numeric kernel, the gate catalog and the bound evaluators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has {found} entries, expected {expected} for a square matrix")]
    BadShape { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("state trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("state is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector norm is {norm}, expected 1")]
    BadNorm { norm: f64 },

    #[error("subsystem dimensions {dims:?} do not multiply to {dim}")]
    BadDims { dims: Vec<usize>, dim: usize },

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("argument {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("unknown gate `{name}`; valid names: {valid}")]
    UnknownGate { name: String, valid: String },

    #[error("matrix is not unitary (residual max |U^dagger U - I| = {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("technique not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
