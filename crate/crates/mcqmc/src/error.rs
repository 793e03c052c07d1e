use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum McqmcError {
    /// A CUD stream was asked for more scalars than its period provides.
    #[error("stream exhausted after {emitted} scalars (period {period})")]
    Exhausted { emitted: u64, period: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("scalar sequence too short: need at least {need}, got {got}")]
    TooShort { need: usize, got: usize },

    #[error("argument {value} outside the open unit interval")]
    DomainError { value: f64 },

    /// Chain state violates a sampler precondition (zero target density,
    /// NaN in a density evaluation, ...). `step` is the chain index when known.
    #[error("invalid state at step {step}: {reason}")]
    InvalidState { step: usize, reason: String },

    #[error("invalid coupling bound: {0}")]
    InvalidBound(String),

    #[error("exact discrepancy enumeration over {corners} corners exceeds budget {budget}")]
    BudgetExceeded { corners: u128, budget: u128 },

    #[error("gamma quantile failed to converge (shape {shape}, u {u})")]
    QuantileDivergence { shape: f64, u: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    /// A failure inside one replicate of a replicated experiment; wraps the
    /// underlying error so batch runs can report which replicate died.
    #[error("replicate {index} failed: {source}")]
    Replicate {
        index: usize,
        #[source]
        source: Box<McqmcError>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, McqmcError>;
