use alloc::string::String;

/// Errors raised by the exact, variational and numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Addition or subtraction of values carrying different powers of √π.
    #[error("cannot add pi^({left}/2) and pi^({right}/2) terms exactly")]
    ExponentMismatch { left: i32, right: i32 },

    /// The request would exceed a configured memory guard.
    #[error("{what}: requested {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// Adaptive quadrature hit its subdivision limit.
    #[error("quadrature did not converge: best estimate {estimate:e} with error bound {error_bound:e}")]
    Convergence { estimate: f64, error_bound: f64 },

    /// The eigensolver grid is too coarse for the requested tolerance.
    #[error(
        "eigenvalue error estimate {estimate:e} exceeds tolerance {tolerance:e} \
         with {grid_points} grid points; retry with {} points",
        grid_points * 2
    )]
    Resolution {
        estimate: f64,
        tolerance: f64,
        grid_points: usize,
    },

    /// A numerical invariant that should be impossible to break was broken.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
