use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid qubit subset: {0}")]
    InvalidSubset(String),

    #[error("matrix is not hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix has a negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension {0} is not supported (must be a power of two no larger than {max})", max = crate::linalg::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("value {value} is outside the domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
