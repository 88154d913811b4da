use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input has the wrong shape (non-square matrix, bad edge endpoint, ...).
    #[error("structural error: {0}")]
    Structural(String),

    /// Arguments outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Graph is disconnected; carries one unreachable pair.
    #[error("graph is disconnected: vertices {0} and {1} are not connected")]
    Disconnected(usize, usize),

    /// Request exceeds a configured size ceiling.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A step that should be impossible under the stated hypotheses failed.
    #[error("invariant violated at vertex {vertex}: {detail}")]
    Invariant { vertex: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
