use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// Every degree is 1: the germ is smooth and carries no singular invariants.
    #[error("smooth germ: all degrees equal 1 (dimension {n})")]
    SmoothGerm { n: u32 },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("coefficient {power} requested beyond truncation order {order}")]
    BeyondOrder { power: usize, order: usize },

    /// An exact division left a remainder; always an arithmetic bug.
    #[error("non-exact division in {context}")]
    NonExactDivision { context: String },

    #[error("method {method} does not apply: {reason}")]
    MethodMismatch {
        method: &'static str,
        reason: String,
    },

    #[error("cross-check failure in {quantity}: {detail}")]
    Disagreement { quantity: String, detail: String },

    #[error("wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: String, got: u32 },

    #[error("empty grid: {0}")]
    EmptyGrid(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonExactDivision { .. } | Error::Disagreement { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
