//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The object cannot certify that degreewise fixed simplices model the
    /// topological fixed-point set.
    #[error("not fixed-faithful: {0}")]
    NotFixedFaithful(String),

    #[error("missing basepoint: {0}")]
    MissingBasepoint(String),

    /// A cohomology request beyond the faithful range of a truncated model.
    #[error("truncated model: {0}")]
    Truncated(String),

    /// z-multiplication failed to be an isomorphism inside the verified
    /// window, meaning the column truncation was too small.
    #[error("stabilization failure at degree {degree}: z-multiplication is not an isomorphism")]
    StabilizationFailure { degree: usize },

    /// Classification routes returned different verdicts. This indicates an
    /// internal soundness bug, never a property of the input space.
    #[error("route disagreement: {0}")]
    RouteDisagreement(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: refusals are 2, internal errors 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RouteDisagreement(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
