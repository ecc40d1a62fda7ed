use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at column {pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("variable X{index} at column {pos} is out of range for n = {n}")]
    IndexOutOfRange { index: u64, n: usize, pos: usize },

    #[error("arity {n} is outside 1..={max}")]
    Arity { n: usize, max: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("parameter {value} is outside 1..={n}")]
    Range { value: usize, n: usize },

    #[error("indicator sequences need a nonempty index set")]
    EmptyIndex,

    #[error("mask {mask:#b} is not a nonempty subset of 1..={n}")]
    InvalidMask { mask: u32, n: usize },

    #[error("malformed report: {0}")]
    Report(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
