use thiserror::Error;

use crate::quadrature::QuadratureFault;
use crate::specfun::DomainError;
use crate::stack::StackDiagnostics;

/// Errors surfaced by the potential engine.
///
/// Quadrature non-convergence is not an error: it is reported through the
/// `converged` flag on every estimate. Errors are reserved for invalid input
/// and genuine numerical faults.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid layer stack: {0}")]
    Stack(#[from] StackDiagnostics),

    #[error(transparent)]
    Quadrature(#[from] QuadratureFault),

    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error("cavity factor denominator vanishes at xi = {xi} (relative size {relative:e})")]
    SingularCavity { xi: f64, relative: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
