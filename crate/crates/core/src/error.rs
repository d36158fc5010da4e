use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("capacity mismatch: {0} vs {1}")]
    CapacityMismatch(usize, usize),
    #[error("capacity {0} exceeds the supported maximum of 64 generators")]
    CapacityTooLarge(usize),
    #[error("generator θ{index} is outside θ1..θ{capacity}")]
    GeneratorOutOfRange { index: usize, capacity: usize },
    #[error("capacity exhausted: {needed} generators needed, {available} available")]
    CapacityExhausted { needed: usize, available: usize },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("cannot embed arity {from} into smaller arity {to}")]
    EmbedTooSmall { from: usize, to: usize },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix carries no (k, l) grading")]
    Ungraded,
    #[error("matrix does not commute with J")]
    NotInCentralizer,
    #[error("matrix is not of the block form [[A, B], [B, A]]")]
    NotSymmetricBlock,
    #[error("fresh generator θ{0} dropped out of an evaluation")]
    FreshGeneratorDropped(usize),
    #[error("expression is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("variable x{0} has no assigned matrix")]
    UnassignedVariable(usize),
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("expected a pure expression, found a mixed one")]
    MixedExpression,
    #[error("cannot strip x{var}: {reason}")]
    Strip { var: usize, reason: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("Q-function expansion failed: {0}")]
    BasisExpansion(String),
    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("json: {0}")]
    Json(String),
}
