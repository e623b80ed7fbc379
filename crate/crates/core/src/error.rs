use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision {requested} outside 1..={max} π-digits")]
    Precision { requested: u32, max: u32 },

    #[error("operands belong to different rings ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("element is not divisible by π")]
    NotDivisible,

    #[error("division by π would exhaust the remaining precision")]
    PrecisionExhausted,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("coefficient {index} vanishes at working precision")]
    ZeroCoefficient { index: usize },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("unknown field tag `{0}`")]
    UnknownField(String),

    #[error("no element found: {0}")]
    NotFound(String),

    #[error("expected a unit, found an element of positive valuation")]
    NonUnit,

    #[error("variables sit at different levels ({0} vs {1})")]
    LevelMismatch(u32, u32),

    #[error("contraction vanishes at working precision; the substitution is already a zero")]
    DegenerateContraction,

    #[error("invalid pairing for a four-variable contraction: {0}")]
    InvalidPairing(String),

    #[error("no variable or free level available at level {0}")]
    MissingRung(u32),

    #[error("level {0} is not free for this variable")]
    LevelNotFree(u32),

    #[error("Hensel step from modulus π^{0} found no candidate")]
    StepFailed(u32),

    #[error("no liftable zero found")]
    NoZeroFound,

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
