use quantum_geometry::GeomError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),

    #[error("state is stationary: {0}")]
    Stationary(String),

    #[error("endpoints are orthogonal, so the geodesic phase is undefined: {0}")]
    Orthogonal(String),

    #[error("curve is flat at numerical zero: {0}")]
    FlatCurve(String),

    #[error("verification failed: {0} check(s) did not pass")]
    VerifyFailed(usize),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Stationary(_) => 3,
            CliError::Orthogonal(_) => 4,
            CliError::FlatCurve(_) => 5,
        }
    }

    pub fn field(field: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Parse(format!("invalid `{field}`: {msg}"))
    }
}

/// Maps library errors that carry their own exit code; everything else is
/// reported as invalid input.
impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::OrthogonalEndpoints { .. } => CliError::Orthogonal(e.to_string()),
            GeomError::StationaryState { .. } => CliError::Stationary(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}
