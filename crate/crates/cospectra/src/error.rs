use thiserror::Error;

/// Crate-wide error type. The CLI maps variants onto process exit codes:
/// input problems exit 2, resource caps exit 3, theorem violations exit 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("enumeration cap exceeded: {0}")]
    Resource(String),

    /// A check mandated by a published theorem failed. Either the theorem has
    /// a counterexample or (far more likely) the implementation has a bug;
    /// both warrant a loud abort.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
