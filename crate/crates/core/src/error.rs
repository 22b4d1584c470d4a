use thiserror::Error;

use crate::structure::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid power structure: {0}")]
    InvalidStructure(ValidationReport),

    #[error("tactic matrix must be {expected}x{expected}, got {found} entries")]
    Shape { expected: usize, found: usize },

    #[error("discounted utility diverges: delta * g^(alpha - 2) = {ratio} >= 1")]
    DivergentDiscount { ratio: f64 },

    #[error("truncation horizon {needed} exceeds cap {cap}")]
    HorizonCapReached { needed: u64, cap: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("agent index {index} out of range for {len} agents")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("enumeration of {count} candidates exceeds cap {cap}")]
    SizeLimit { count: u128, cap: u64 },

    #[error("agents {i} and {j} are neutral toward each other")]
    NoRelation { i: usize, j: usize },

    #[error("self-entry of a discrete pattern must be neutral (agent {0})")]
    SelfStance(usize),
}
