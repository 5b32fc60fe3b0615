use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Malformed or out-of-contract input; the message names the offending
    /// field or value.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Exponent tuple violates the admissibility requirements.
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),

    /// A precondition required a nondegenerate phase; the witness is a point
    /// off the coordinate hyperplanes where the mixed derivative of some
    /// compact-face restriction vanishes.
    #[error("degenerate phase: mixed face derivative vanishes near {witness:?}")]
    DegeneratePhase { witness: Vec<f64> },

    /// A quadrature request would exceed the configured point budget.
    #[error("quadrature budget exceeded: {points} points requested, cap is {cap}")]
    BudgetExceeded { points: u128, cap: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
