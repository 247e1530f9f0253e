use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants map one-to-one onto the failure classes of the public operations,
/// so the CLI can print the text verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation at position {position}: {reason}")]
    Validation { position: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("kind error: {0}")]
    Kind(String),

    #[error("no weight: {0}")]
    NoWeight(String),

    #[error("scheme error: {0}")]
    Scheme(String),

    #[error("unknown model: {0}")]
    UnknownModel(String),

    #[error("size error: n = {n} exceeds the configured limit of {limit} for {signedness} permutations")]
    Size {
        n: usize,
        limit: usize,
        signedness: &'static str,
    },

    #[error("permutation cannot be sorted with the operations of model {0}")]
    Unsortable(String),

    #[error("projection error: {0}")]
    Projection(String),

    #[error("certificate error: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
