use thiserror::Error;

/// Errors raised by the clustering pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Point dimensionality or vector length does not match what was expected.
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    /// A parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Input data violates a precondition (unwrapped coordinates, non-finite values, ...).
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_shape(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Shape { expected, found })
    }
}
