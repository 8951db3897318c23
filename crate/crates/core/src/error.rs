use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of refinement depth before meeting its tolerance.
    #[error("quadrature did not converge: estimated error {error:e} exceeds tolerance {tolerance:e}")]
    Convergence { error: f64, tolerance: f64 },

    /// The feasibility simplex hit its iteration cap.
    #[error("simplex exceeded {0} iterations")]
    Degenerate(usize),

    /// A threshold theorem was queried outside its hypotheses.
    #[error("regime violation: {0}")]
    RegimeViolation(String),

    /// A tail parameter set that admits no asymptotic regime.
    #[error("out of range: b = {0} must exceed 1/2")]
    OutOfRange(f64),

    /// A polytope would exceed the configured vertex cap.
    #[error("cap exceeded: {what} = {value} > {cap}")]
    CapExceeded { what: &'static str, value: f64, cap: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
