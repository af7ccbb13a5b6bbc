use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring table: {0}")]
    MalformedTable(String),

    #[error("element {index} is out of range for a ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("subset belongs to a different ring")]
    RingMismatch,

    #[error("`{expr}` would have {order} elements, over the size budget of {budget}")]
    Capacity {
        expr: String,
        order: u128,
        budget: usize,
    },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("element {0} is not idempotent")]
    InvalidIdempotent(usize),

    #[error("invalid endomorphism: {0}")]
    InvalidEndomorphism(String),

    #[error("subset is not a two-sided ideal")]
    InvalidIdeal,

    #[error("S must be a nonempty subset of the idempotents")]
    InvalidS,

    #[error("invalid ring expression: {0}")]
    InvalidExpr(String),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("`{label}` is not a ring: {detail}")]
    NotARing { label: String, detail: String },

    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),
}
