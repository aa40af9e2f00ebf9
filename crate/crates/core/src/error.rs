use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-H-hermitian (residual {residual:.3e})")]
    NotSkewHermitian { residual: f64 },

    #[error("matrix is not in sp(2n,C) (residual {residual:.3e})")]
    NotSymplecticAlgebra { residual: f64 },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("eigenvalues could not be paired as (i mu, -i mu): {0}")]
    Pairing(String),

    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    #[error("function evaluation failed: {0}")]
    Evaluation(String),

    #[error("invalid spectrum request: {0}")]
    InvalidSpectrum(String),

    #[error("skew pairing violates its parity condition at order {order} (residual {residual:.3e})")]
    PairingParity { order: usize, residual: f64 },

    #[error("series is not pointed or has singular leading coefficient")]
    SingularSeries,

    #[error("coordinate order {needed} exceeds truncation order {order}")]
    OrderOverflow { needed: usize, order: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("retry budget exhausted after {attempts} attempts: {reason}")]
    RetriesExhausted { attempts: usize, reason: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
