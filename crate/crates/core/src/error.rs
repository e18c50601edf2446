use thiserror::Error;

/// Errors surfaced by fallible ring and series operations.
///
/// Structural impossibilities (mismatched strand counts, out-of-range
/// generator indices) are programming errors and panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("series operation requires constant term 1")]
    NonUnitConstantTerm,
}
