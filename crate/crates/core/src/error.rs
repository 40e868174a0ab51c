use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor classes live on surfaces with {left} and {right} blown-up points")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported surface: {0} blown-up points (supported range is 1..=8)")]
    UnsupportedSurface(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("unknown configuration slug `{0}`")]
    UnknownSlug(String),

    #[error("reduction of {class} did not terminate within {bound} subtractions")]
    Divergence { class: String, bound: String },

    #[error("internal consistency violated: {0}")]
    InternalConsistency(String),

    #[error("Hilbert function is not realizable by a monomial ideal in two variables at degree {degree}: {reason}")]
    UnrealizableHilbert { degree: usize, reason: String },

    #[error("inconsistent staircase: {0}")]
    InconsistentStaircase(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}
