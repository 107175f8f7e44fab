use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The variants map onto the command-line exit codes: configuration-type
/// problems are user errors, `Consistency` means an internal invariant of the
/// mathematics was violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("grade depth {requested} is outside the computed window (cutoff {cutoff})")]
    OutOfWindow { requested: i64, cutoff: i64 },

    #[error("Weyl reduction did not terminate: {0}")]
    NonTermination(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
