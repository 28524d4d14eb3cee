use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Surfaces touch (or numerically touch): `mu` is zero and every series diverges.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("series stalled after {terms} terms (last term {last_term:e})")]
    SeriesStalled { terms: usize, last_term: f64 },

    #[error("non-positive logarithm argument {0:e}")]
    NonPositiveLogArgument(f64),

    #[error("{what} = {value} exceeds the supported maximum {max}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
