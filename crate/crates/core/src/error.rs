use thiserror::Error;

/// Failures raised by the quaternion kernels, the real SVD and the text formats.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("division by the zero quaternion")]
    ZeroDivision,

    /// Householder target vector is not a real unit vector.
    #[error("bad Householder target: {0}")]
    BadTarget(String),

    #[error("matrix is not bidiagonal: {0}")]
    NotBidiagonal(String),

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    /// The adjoint spectrum could not be split into runs of four.
    #[error("adjoint singular values do not group into fourfold runs: {0}")]
    GroupingFailure(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
