use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in `{field}`: expected {expected}, found {found}")]
    DimensionMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("`{field}` must be non-empty")]
    Empty { field: &'static str },
    #[error("negative weight in `{field}` at index {index}")]
    NegativeWeight { field: &'static str, index: usize },
    #[error("`{field}` contains a non-finite entry")]
    NonFiniteEntry { field: &'static str },
    #[error("not a probability vector: {reason}")]
    InvalidStrategy { reason: &'static str },
    #[error("strategy violates the average cap: {value} > {cap}")]
    CapExceeded { value: f64, cap: f64 },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex failed: {0}")]
    NumericalFailure(&'static str),
    #[error("malformed linear program: {0}")]
    InvalidLp(&'static str),
    #[error("the strategy pair admits no equilibrium multipliers")]
    NotAnEquilibrium,
    #[error("a player's feasible strategy set may be empty (cap below the cheapest action)")]
    EmptyFeasibleSet,
    #[error("invalid solver options: {0}")]
    InvalidOptions(&'static str),
    #[error("invalid link: {0}")]
    InvalidLink(&'static str),
    #[error("transmit power too small: threshold for rate {index} is negative")]
    NegativeThreshold { index: usize },
    #[error("budget {budget} outside [0, {max}]")]
    BudgetOutOfRange { budget: f64, max: f64 },
    #[error("constructed certificate failed verification (max residual {max_residual})")]
    VerificationFailed { max_residual: f64 },
}
