//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("coordinate vector has length {got}, expected {expected}")]
    CoordinateLength { got: usize, expected: usize },

    #[error("matrix dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("point ({0}, {1}) lies outside the field domain")]
    OutOfDomain(f64, f64),

    #[error("point ({0}, {1}) is in the excluded singular set")]
    SingularPoint(f64, f64),

    #[error("finite-difference stencil at ({0}, {1}) leaves the domain")]
    StencilOutOfDomain(f64, f64),

    #[error("metric is degenerate at ({0}, {1}): {2}")]
    DegenerateMetric(f64, f64, String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gauge violation at ({0}, {1}): {2}")]
    GaugeViolation(f64, f64, String),

    #[error("metric coefficients are not constant over the grid: {0}")]
    NonConstantMetric(String),

    #[error("projector rank is inconsistent over the domain: {0}")]
    RankInconsistent(String),

    #[error("matrix is not a projector within tolerance: {0}")]
    NotAProjector(String),

    #[error("not an algebra element: {0}")]
    NotAlgebraElement(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
