use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible number towers: {0} and {1}")]
    IncompatibleTowers(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("interval refinement exhausted {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },
    #[error("operation would produce an empty sequence")]
    EmptyResult,
    #[error("entry {index} is not positive")]
    NonPositiveEntry { index: usize },
    #[error("input must have positive entries (entry {index} is not)")]
    NonPositiveInput { index: usize },
    #[error("next term is not determined at index {index} (zero slope)")]
    SingularStep { index: usize },
    #[error("no fixed sequence extends these terms: the equation for index {index} has no solution")]
    NoFixedExtension { index: usize },
    #[error("annihilator order {order} exceeds cap {cap}")]
    OrderOverflow { order: usize, cap: usize },
    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("degree {degree} is too small (need > {min})")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
