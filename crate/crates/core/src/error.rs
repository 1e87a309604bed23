use thiserror::Error;

/// Errors produced by the grey model and its estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input sequence is empty")]
    EmptyInput,
    #[error("sequence too short: need at least {needed} points, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("fractional order must be finite and in (0, 2], got {0}")]
    InvalidOrder(f64),
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("observation {index} is not positive ({value})")]
    NonPositive { index: usize, value: f64 },
    #[error("labels must be strictly increasing and equally spaced (at position {index})")]
    BadLabels { index: usize },
    #[error("sequence lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("actual value at position {index} is zero")]
    ZeroActual { index: usize },
    #[error("design matrix is rank deficient")]
    SingularDesign,
    #[error("degenerate parameters: |a| = {a:e} is below 1e-12")]
    DegenerateParams { a: f64 },
    #[error("forecast horizon must be at least 1")]
    InvalidHorizon,
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("order grid is empty (step {0})")]
    EmptyGrid(f64),
    #[error("no finite fitness was found during the search")]
    NoFeasibleSolution,
}

impl Error {
    /// True for failures of the numerics (singular designs, degenerate
    /// parameters, searches that never found a finite fitness) as opposed to
    /// bad inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularDesign | Error::DegenerateParams { .. } | Error::NoFeasibleSolution
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
