use thiserror::Error;

/// Errors produced by the representation and operator machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown label `{label}` for {context}")]
    UnknownLabel { label: String, context: &'static str },

    #[error("element is not anti-Hermitian (deviation {deviation:.3e})")]
    NotAntiHermitian { deviation: f64 },

    #[error("element lies outside the represented algebra: {0}")]
    OutsideSpan(String),

    #[error("quadrature degree {have} is insufficient, {need} required")]
    InsufficientQuadrature { have: usize, need: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("grid did not converge: block norm {coarse:.9e} at base grid vs {fine:.9e} at doubled grid")]
    GridConvergence { coarse: f64, fine: f64 },

    #[error("empty report")]
    EmptyReport,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical invariant, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Consistency(_) | Error::GridConvergence { .. } | Error::NotAntiHermitian { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
