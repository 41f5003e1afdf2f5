//! Error type shared by all modules.

use thiserror::Error;

use crate::tensor::Domain;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a {expected} tensor, got {got}")]
    Domain { expected: Domain, got: Domain },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("leading dimension {dim} is odd; a 2n x 2n structure is required")]
    OddLeadingDim { dim: usize },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not symmetric (deviation {deviation:.3e})")]
    NotSymmetric { deviation: f64 },

    #[error("matrix is not real (max imaginary part {max_imag:.3e})")]
    NotReal { max_imag: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix is not skew-symmetric (deviation {deviation:.3e})")]
    NotSkewSymmetric { deviation: f64 },

    #[error("matrix is singular or nearly singular (smallest magnitude {min_magnitude:.3e})")]
    Singular { min_magnitude: f64 },

    #[error("tensor is not T-symplectic (residual {residual:.3e})")]
    NotSymplectic { residual: f64 },

    #[error("tensor is not T-Hamiltonian (residual {residual:.3e})")]
    NotHamiltonian { residual: f64 },

    #[error("Fourier slices are not conjugate-symmetric at slice {slice} (residual {residual:.3e})")]
    ConjugateSymmetry { slice: usize, residual: f64 },

    #[error("eigenvalues deviate from the imaginary axis by {deviation:.3e} (tolerance {tolerance:.3e})")]
    ImaginaryAxis { deviation: f64, tolerance: f64 },

    #[error("entropy argument {lambda} is below the uncertainty floor 1")]
    EntropyDomain { lambda: f64 },

    #[error("slice {slice}: {source}")]
    Slice {
        slice: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("LAPACK routine {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },

    #[error("tensor file: {0}")]
    Codec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Exit code category used by the command-line interface:
    /// 2 usage, 3 I/O, 4 numeric/precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Io(_) | Error::Codec(_) => 3,
            _ => 4,
        }
    }
}
