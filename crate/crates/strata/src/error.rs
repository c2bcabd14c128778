//! Error types shared across the crate.

use thiserror::Error;

/// Any failure produced by validation, evaluation, parsing or file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A signature, sentence or model does not fit the logic instance.
    #[error("capability violation: {0}")]
    Capability(String),

    /// A sentence refers to symbols missing from the signature, or misuses
    /// arities or layers.
    #[error("sentence error: {0}")]
    Sentence(String),

    /// A model fails its structural invariants.
    #[error("model error: {0}")]
    Model(String),

    /// A state is not drawn from the model's stratification.
    #[error("state error: {0}")]
    State(String),

    /// A signature or signature morphism is malformed.
    #[error("signature error: {0}")]
    Signature(String),

    /// A filter construction is improper or out of budget.
    #[error("filter error: {0}")]
    Filter(String),

    /// Parse failure, with a byte position into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Schema violation in a signature/model file.
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },

    /// Caller-supplied bounds are unusable.
    #[error("bounds error: {0}")]
    Bounds(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
