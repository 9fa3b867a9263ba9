use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The local Gram matrix could not be solved even after the stencil
    /// growth retry. Carries the evaluation point and the offending stencil.
    #[error("singular local system at {point:?} (stencil {stencil:?})")]
    SingularSystem { point: Vec<f64>, stencil: Vec<usize> },

    /// A boundary perturbation produced a degenerate region.
    #[error("invalid result: {0}")]
    InvalidResult(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
