use thiserror::Error;

/// Errors produced by the geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {0} is too small, need at least 2")]
    DimensionTooSmall(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("vector has zero norm")]
    ZeroVector,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state norm {norm} is not within {tol} of one")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("central moment order {0} not in 1..=4")]
    InvalidMomentOrder(u32),

    #[error("moment has imaginary residue {imag:e}")]
    NonRealMoment { imag: f64 },

    #[error("invalid physical constants: hbar={hbar}, gamma={gamma}")]
    InvalidConstants { hbar: f64, gamma: f64 },

    #[error("endpoints are orthogonal (|overlap| = {overlap:e}); canonical phase undefined")]
    OrthogonalEndpoints { overlap: f64 },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("states coincide as rays; the evolution plane is degenerate")]
    DegeneratePlane,

    #[error("states are orthogonal; the evolution plane is undefined")]
    OrthogonalStates,

    #[error("projection onto the plane vanishes (I2 = {overlap:e})")]
    ZeroProjection { overlap: f64 },

    #[error("state is stationary (variance {variance:e} <= {tolerance:e})")]
    StationaryState { variance: f64, tolerance: f64 },

    #[error("value {value:e} at index {index} is not positive")]
    NonPositiveValues { index: usize, value: f64 },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("axis vector has norm {norm}, expected 1")]
    NonUnitAxis { norm: f64 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("eigenstate indices must differ (both {0})")]
    RepeatedIndex(usize),

    #[error("point too close to the domain boundary along parameter {param}")]
    NearBoundary { param: usize },

    #[error("non-finite derivative along parameter {param}")]
    NonFiniteDerivative { param: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
