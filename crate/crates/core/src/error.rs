use thiserror::Error;

/// Errors surfaced by solvers and the verification oracle.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested quantity is undefined at `a = 0`.
    #[error("undefined at a = 0: {0}")]
    NeutralFeedback(&'static str),

    /// A degenerate prior was passed where private uncertainty is required;
    /// the complete-information solver covers that case.
    #[error("prior is degenerate; solve the complete-information game instead")]
    DegeneratePrior,

    /// The closed-form criterion's premise fails, so it reports neither
    /// true nor false.
    #[error("criterion inapplicable: {0}")]
    Inapplicable(String),

    /// A bracketing root finder could not locate a sign change.
    #[error("root finding failed: {0}")]
    RootFind(String),

    /// Quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge (last estimate {estimate}, last change {change})")]
    QuadratureNonConvergence { estimate: f64, change: f64 },

    /// Two supposedly equivalent computation routes disagreed.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
