use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{routine} did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence {
        routine: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("replay coordinates out of range: {0}")]
    ReplayRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
