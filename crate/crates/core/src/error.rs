use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Non-convergence of a quadrature is *not* an error: it is reported through
/// [`crate::quadrature::QuadratureOutcome::converged`] so callers still get the
/// partial value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integrand returned a non-finite value at x = {x}")]
    InvalidIntegrand { x: f64 },

    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("oscillatory integral appears divergent: cell magnitudes stopped decreasing after {cells} cells")]
    DivergenceSuspected { cells: usize },

    #[error("metadata inconsistency for `{id}`: {detail}")]
    MetadataInconsistency { id: String, detail: String },

    #[error("unknown function id `{0}`")]
    UnknownFunction(String),

    #[error("invalid truncation ladder: {0}")]
    InvalidLadder(String),

    #[error("precision limit: {0}")]
    Precision(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
