use thiserror::Error;

use crate::point::SpaceTag;

/// Errors raised by the counting-measure model and the difference calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("ground space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: SpaceTag, found: SpaceTag },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("difference operator needs at least one increment point")]
    EmptyIncrements,
    #[error("pattern is not a sub-measure of the minuend")]
    NotSubMeasure,
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}
