use thiserror::Error;

/// Errors produced by the evaluators, the sieve and the verification sweeps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iteration hit its cap without meeting the stopping rule.
    #[error("{op} did not converge for argument {arg} after {iterations} iterations")]
    NonConvergence {
        op: &'static str,
        arg: f64,
        iterations: u32,
    },

    /// A query falls outside what a prime table covers.
    #[error("range error: {0}")]
    Range(String),

    /// A request would exceed a configured resource ceiling.
    #[error("resource error: {0}")]
    Resource(String),

    /// Root search found no sign change on the interval.
    #[error("no sign change of the bound difference on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    /// Root search found more than one sign change on the interval.
    #[error("{changes} sign changes of the bound difference on [{lo}, {hi}]")]
    Ambiguous { lo: f64, hi: f64, changes: usize },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
