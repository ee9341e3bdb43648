use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or precondition-violating input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A value left the range of `f64`.
    #[error("range error: {0}")]
    Range(String),

    /// Iteration failed to converge or two computations disagreed.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Passports whose infinite tails cannot be combined in closed form.
    #[error("unsupported merge: {0}")]
    UnsupportedMerge(String),

    /// Fewer non-empty level groups than requested terms.
    #[error("insufficient groups: found {found} of {requested} within the scanned range")]
    InsufficientGroups { found: usize, requested: usize },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
