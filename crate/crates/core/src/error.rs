//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by geometry, grid, LP and bound computations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    UnsupportedDimension(String),
    #[error("direction vector must be nonzero")]
    ZeroDirection,
    #[error("LP numerical failure: {0}")]
    NumericalFailure(String),
    #[error("LP infeasible")]
    Infeasible,
    #[error("LP unbounded")]
    Unbounded,
    #[error("grid step too large: {0}")]
    StepTooLarge(String),
    #[error("duplicate grid direction at index {0}")]
    DuplicateDirection(usize),
    #[error("decomposition failure: {0}")]
    DecompositionFailure(String),
    #[error("evaluation failure: {0}")]
    EvaluationFailure(String),
    #[error("grid function has a nonpositive value at direction {index}: {value}")]
    NonpositiveValue { index: usize, value: f64 },
    #[error("degenerate polytope: {0}")]
    Degenerate(String),
    #[error("outer-approximation premise violated: {0}")]
    NotOuter(String),
    #[error("argument outside the function domain: {0}")]
    DomainError(String),
    #[error("value outside the invertible range: {0}")]
    OutOfRange(String),
    #[error("grid too coarse for the bound hypothesis: {0}")]
    GridTooCoarse(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
