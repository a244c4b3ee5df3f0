use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation order must be at least 1, got {0}")]
    InvalidOrder(u32),

    #[error("truncation has no basis cells")]
    EmptyTruncation,

    #[error("singular system at order {order} (dimension {dimension})")]
    SingularSystem { order: u32, dimension: usize },

    #[error("system is not square: {rows} equations for {unknowns} unknowns")]
    NotSquare { rows: usize, unknowns: usize },

    #[error("density abscissa must be non-negative, got {0}")]
    NegativeAbscissa(String),

    #[error("evaluation grid is empty")]
    EmptyGrid,

    #[error("evaluation grid must be strictly increasing and start at ξ >= 0")]
    InvalidGrid,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: estimate {estimate}, error estimate {error_estimate:e}")]
    QuadratureNotConverged { estimate: f64, error_estimate: f64 },

    #[error("optimizer did not converge after {iterations} iterations; best value {best_value} at {best_point:?}")]
    OptimizerNotConverged { iterations: usize, best_value: f64, best_point: Vec<f64> },

    #[error("non-finite value {0}")]
    NonFinite(f64),

    #[error("parse error: {0}")]
    Parse(String),
}
