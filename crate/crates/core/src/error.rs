use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("harmonic degree {degree} exceeds the available maximum {kmax}")]
    DegreeOutOfRange { degree: usize, kmax: usize },

    #[error("quadrature of order {order} insufficient: error estimate {estimate:.3e} above tolerance {tolerance:.3e}")]
    InsufficientQuadrature { order: usize, estimate: f64, tolerance: f64 },

    #[error("quadrature budget exhausted: error estimate {estimate:.3e}")]
    QuadratureBudget { estimate: f64 },

    #[error("truncation error {estimate:.3e} above tolerance {tolerance:.3e}")]
    Truncation { estimate: f64, tolerance: f64 },

    #[error("multiplier at degree {degree} is {value:.3e}; inversion is ill-conditioned (condition number {condition:.3e})")]
    SingularMultiplier { degree: usize, value: f64, condition: f64 },

    #[error("object is not centered: degree-1 multiplier {0:.3e}")]
    NotCentered(f64),

    #[error("pointwise evaluation needs a continuous density: {0}")]
    NotPointwise(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("operation on an empty polytope")]
    EmptyPolytope,

    #[error("degenerate split: {0}")]
    DegenerateSplit(String),

    #[error("insufficient samples: standard error {stderr:.3e} above requested {requested:.3e}")]
    InsufficientSamples { stderr: f64, requested: f64 },

    #[error("translation window too small: {hits} boundary hits")]
    WindowTooSmall { hits: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
