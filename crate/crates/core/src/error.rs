use thiserror::Error;

/// Errors raised by the chain engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid probability: {0}")]
    InvalidProbability(String),

    #[error("invalid dimension {0}: at least 2 outcomes are required")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("setting pair ({first}, {second}) is neither an adjacent link nor the closing pair")]
    NotALink { first: usize, second: usize },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("no closed form is available for the extended chain")]
    UnsupportedVariant,

    #[error("no violation found up to the scan cap of {cap}")]
    NoneFound { cap: usize },

    #[error("enumeration needs {needed} strategies, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("strategy shape mismatch: expected {expected_alice} Alice and {expected_bob} Bob outcomes, found {found_alice} and {found_bob}")]
    ShapeMismatch {
        expected_alice: usize,
        expected_bob: usize,
        found_alice: usize,
        found_bob: usize,
    },

    #[error("outcome {outcome} out of range for dimension {d}")]
    OutcomeOutOfRange { outcome: usize, d: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
