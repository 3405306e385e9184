use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("section at t = {t} is empty at spacing h = {h}")]
    EmptySection { t: f64, h: f64 },
    #[error("window exceeds the rescaled slab: {0}")]
    WindowTooLarge(String),
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("invalid spherical cap angle {0} (must lie in (0, pi))")]
    InvalidCap(f64),
    #[error("eigenvalue must be positive, got {0}")]
    NonpositiveLambda(f64),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("adaptive quadrature exceeded depth {0}")]
    QuadratureFailure(usize),
    #[error("growth curves do not overlap")]
    NoOverlap,
    #[error("linear solver diverged: {0}")]
    SolverDivergence(String),
    #[error("mask degenerate: {0}")]
    MaskDegenerate(String),
    #[error("t = {0} lies outside the solved window")]
    OutOfWindow(f64),
    #[error("point lies outside the cross-section")]
    OutsideSection,
    #[error("direction lies outside the cap")]
    OutsideCap,
    #[error("point lies outside the domain")]
    OutsideDomain,
    #[error("walk exceeded {0} steps")]
    PathBudgetExceeded(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid config at {path}: {message}")]
    ConfigInvalid { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
