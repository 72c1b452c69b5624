use thiserror::Error;

use crate::quantum::QubitLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit {0} is not present in the register")]
    UnknownQubit(QubitLabel),

    #[error("qubit {0} appears more than once")]
    DuplicateQubit(QubitLabel),

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("basis is not orthonormal (max Gram deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("outcome {outcome} has probability {probability:e}, below the zero cutoff")]
    ZeroProbabilityOutcome { outcome: usize, probability: f64 },

    #[error("requested subsystem is entangled with the rest (residual {residual:e})")]
    NotSeparable { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no signed Pauli product corrects branch {0}")]
    UncorrectableBranch(String),

    #[error("n = {n} exceeds the enumeration bound of {max}")]
    ResourceBound { n: usize, max: usize },

    #[error("protocol violation: {0}")]
    Protocol(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag for error reporting.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnknownQubit(_) => "unknown_qubit",
            Error::DuplicateQubit(_) => "duplicate_qubit",
            Error::NotNormalized { .. } => "not_normalized",
            Error::NonFinite { .. } => "non_finite",
            Error::NotUnitary { .. } => "not_unitary",
            Error::NotOrthonormal { .. } => "not_orthonormal",
            Error::ZeroProbabilityOutcome { .. } => "zero_probability_outcome",
            Error::NotSeparable { .. } => "not_separable",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::UncorrectableBranch(_) => "uncorrectable_branch",
            Error::ResourceBound { .. } => "resource_bound",
            Error::Protocol(_) => "protocol_violation",
            Error::Json(_) => "json",
        }
    }
}
