//! Error type shared by all modules.

/// Errors produced by solver construction, fitting, and sweeps.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration or precondition (grid size, parameter range, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A spectral state violates the conjugate-symmetry reality condition.
    #[error("reality condition violated: {0}")]
    RealityCondition(String),

    /// Vector/matrix shapes do not line up.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Only the gamma1 < 0 branch of the upwind schemes is implemented.
    #[error("unsupported branch: {0}")]
    UnsupportedBranch(String),

    /// The phase of a multiplier is undefined (reference phase is zero).
    #[error("undefined phase: {0}")]
    UndefinedPhase(String),

    /// Mode 0 is excluded by the Poisson compatibility condition.
    #[error("singular mode: {0}")]
    SingularMode(String),

    /// A fit is rank-deficient at this mode (sin(2*pi*psi) == 0).
    #[error("degenerate mode: {0}")]
    DegenerateMode(String),

    /// The implicit operator vanishes at an active mode.
    #[error("singular operator: {0}")]
    SingularOperator(String),

    /// A metric denominator is identically zero.
    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    /// LU factorization hit a pivot that is singular to working precision.
    #[error("factorization failed: {0}")]
    Factorization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
