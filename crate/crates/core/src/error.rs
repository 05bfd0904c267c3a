use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quaternions belong to different algebras")]
    AlgebraMismatch,
    #[error("algebra parameter must be nonzero")]
    ZeroParameter,
    #[error("({a},{b}) is not a division algebra over the rationals")]
    NotDivision { a: String, b: String },
    #[error("parameter {0} is too large to factor by trial division")]
    ParameterTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quaternions are not conjugate")]
    NotConjugate,
    /// A search that is known to succeed ran out of budget. This flags a
    /// schedule gap, never a mathematical impossibility.
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    /// A chain of exact steps produced an object that failed verification.
    #[error("internal discrepancy: {0}")]
    Discrepancy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
