use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The field size is unsupported (not prime, or not 1 mod 4 where required).
    #[error("invalid field size q = {q}: {reason}")]
    Field { q: u64, reason: String },

    /// A polynomial, method or target string could not be parsed.
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    /// Two routes that must agree did not; always indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    /// An iterative numerical routine did not converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Requested work exceeds the configured budget.
    #[error("estimated cost {estimate:.3e} exceeds budget {budget:.3e}")]
    Budget { estimate: f64, budget: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Inconsistent(format!("serialisation: {e}"))
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
