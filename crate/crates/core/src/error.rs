use thiserror::Error;

/// Errors raised by tensor construction, evaluation and input parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoposError {
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("multi-index has length {got}, tensor order is {order}")]
    IndexLength { got: usize, order: usize },

    #[error("conflicting values for entry {key}: {first} vs {second}")]
    ConflictingEntry { key: String, first: f64, second: f64 },

    #[error("vector has {got} components, tensor dimension is {dim}")]
    DimensionMismatch { got: usize, dim: usize },

    #[error("expected a tensor of order {order} and dimension {dim}, got order {got_order} and dimension {got_dim}")]
    ShapeMismatch {
        order: usize,
        dim: usize,
        got_order: usize,
        got_dim: usize,
    },

    #[error("invalid shape: order {order}, dimension {dim}")]
    InvalidShape { order: usize, dim: usize },

    #[error("non-finite value {0}")]
    NonFinite(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, CoposError>;
