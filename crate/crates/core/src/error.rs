use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid system: {0}")]
    InvalidSpec(String),
    #[error("positions {0} and {1} coincide or are out of order")]
    CoincidentPositions(usize, usize),
    #[error("operation is undefined in the hard-core limit")]
    UnsupportedLimit,
    #[error("no convergence after {max_iter} iterations (residual {residual:e})")]
    NoConvergence { max_iter: usize, residual: f64 },
    #[error("Hessian is not positive definite (smallest eigenvalue {0:e})")]
    DegenerateHessian(f64),
    #[error("invalid scale parameter: {0}")]
    InvalidScale(String),
    #[error("site {site} outside 1..={n}")]
    InvalidSite { site: usize, n: usize },
    #[error("complementary precision block is singular")]
    SingularBlock,
    #[error("quadrature over {0} dimensions is too expensive (N <= 4 supported)")]
    DimensionTooLarge(usize),
    #[error("occupancies are infinitely degenerate in the hard-core limit")]
    InfiniteDegeneracy,
}
