use thiserror::Error;

/// Errors raised by algebra, dynamics and experiment operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Incompatible parameters (mismatched deformation, wrong group dimension, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A monomial does not fit in a truncated Fourier basis.
    #[error("monomial u^{m} v^{n} lies outside truncation radius {radius}")]
    Range { m: i64, n: i64, radius: usize },

    /// Two surd scalars with different radicands were combined additively.
    #[error("sqrt({0}) and sqrt({1}) do not share a quadratic field")]
    RadicandMismatch(u64, u64),

    #[error("radicand {0} is not square-free")]
    NotSquareFree(u64),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
