use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands do not live in the same variable space, dimension, etc.
    #[error("structural mismatch: {0}")]
    Structural(String),

    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A linear factor in a denominator vanished.
    #[error("pole: factor {factor} vanishes")]
    Pole { factor: String },

    /// The integrand returned a NaN or infinity.
    #[error("non-finite integrand value at {point:?}")]
    NonFinite { point: Vec<f64> },

    /// An iterative computation did not settle.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
