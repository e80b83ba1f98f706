use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("coupling g0 = {g0} is at or above the stability bound 2*omega = {bound}")]
    CouplingTooStrong { g0: f64, bound: f64 },
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
    #[error("matrix is not orthogonal (max deviation {0:.3e})")]
    NotOrthogonal(f64),
    #[error("covariance matrix is unphysical (smallest symplectic eigenvalue {0:.6e})")]
    Unphysical(f64),
    #[error("analytic continuation failed: {0}")]
    Continuation(String),
    #[error("Gaussian integral does not converge: {0}")]
    Nonconvergent(String),
    #[error("Fock dimension {dim} exceeds the guard of {limit}")]
    DimensionGuard { dim: usize, limit: usize },
    #[error("optimizer did not converge (best value {best})")]
    Optimizer { best: f64 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Numerical failures (as opposed to bad input) map to CLI exit status 2.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Eigensolver(_)
                | Error::Continuation(_)
                | Error::Nonconvergent(_)
                | Error::Optimizer { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid_spec",
            Error::CouplingTooStrong { .. } => "coupling_too_strong",
            Error::Eigensolver(_) => "eigensolver",
            Error::NotOrthogonal(_) => "not_orthogonal",
            Error::Unphysical(_) => "unphysical",
            Error::Continuation(_) => "continuation",
            Error::Nonconvergent(_) => "nonconvergent",
            Error::DimensionGuard { .. } => "dimension_guard",
            Error::Optimizer { .. } => "optimizer",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
