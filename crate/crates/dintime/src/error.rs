//! Error type shared by all modules.

/// Library-wide error. Variants split into two families: invalid inputs or
/// configuration (rejected up front) and numerical failures detected during
/// a computation. [`Error::exit_code`] maps the family to the CLI exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid data (grid mismatch, overlapping ideal pulses, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Grid too coarse to represent the requested feature.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Invalid solver or experiment configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Quadrature failed to converge; carries the residual estimate.
    #[error("accuracy error: {context} (residual estimate {residual:.3e})")]
    Accuracy { context: String, residual: f64 },

    /// Numerical failure detected mid-run (norm drift, non-finite values, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Non-finite accumulation while summing an expansion.
    #[error("overflow in expansion term {index}: {context}")]
    Overflow { index: usize, context: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 2 for invalid specs/inputs, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Validation(_)
            | Error::Resolution(_)
            | Error::Config(_) => 2,
            Error::Accuracy { .. }
            | Error::Numerical(_)
            | Error::Overflow { .. }
            | Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
