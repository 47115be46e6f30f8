use thiserror::Error;

use crate::rootdata::AffineType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("type mismatch: {0} vs {1}")]
    TypeMismatch(AffineType, AffineType),
    #[error("not a root of type {0}: {1}")]
    NotARoot(AffineType, String),
    #[error("invalid Weyl element: {0}")]
    InvalidElement(String),
    #[error("lambda_c * chi_d must be positive, found {0}")]
    NonPositiveScale(String),
    #[error("lambda_c is zero")]
    ZeroLambdaC,
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("energy is unbounded below: {0}")]
    Unbounded(String),
    #[error("instance is not in normalized form")]
    NotNormalized,
    #[error("translation must be even for B2, found odd entry at index {0}")]
    OddTranslation(usize),
    #[error("Q must be nonzero")]
    ZeroQ,
    #[error("invalid affinisation data: {0}")]
    InvalidAffinisation(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
