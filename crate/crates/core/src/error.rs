use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates the precondition of the operation it was passed to.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("requested range of {requested} entries exceeds the table budget of {budget}")]
    Capacity { requested: u64, budget: u64 },

    #[error("pole of zeta at s = {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("zeta accuracy {estimate:e} not reachable within target {target:e}; raise the cutoff or Bernoulli terms")]
    Precision { estimate: f64, target: f64 },

    #[error("|zeta(s)| = {modulus:e} is too small to divide by")]
    DivisionInstability { modulus: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}
