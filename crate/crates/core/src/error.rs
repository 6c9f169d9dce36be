use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set of {0} items is outside the supported range 1..=16")]
    GroundSetSize(usize),

    #[error("ground-set mismatch: expected {expected} items, got {actual}")]
    GroundSetMismatch { expected: usize, actual: usize },

    #[error("item {item} is out of range for a ground set of {n} items")]
    ItemOutOfRange { item: usize, n: usize },

    #[error("item {0} is already in the set; marginal value undefined")]
    ItemInSet(usize),

    #[error("invalid set function: {0}")]
    InvalidSetFunction(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("buyer {buyer}: declared {declared} but valuation is not {declared} ({detail})")]
    ClassMismatch {
        buyer: usize,
        declared: &'static str,
        detail: String,
    },

    #[error("budgets are only supported for additive valuations (buyer {0})")]
    UnsupportedBudget(usize),

    #[error("price vector has {actual} entries, instance has {expected} sellers")]
    PriceLength { expected: usize, actual: usize },

    #[error("negative price {price} for seller {seller}")]
    NegativePrice { seller: usize, price: String },

    #[error("epsilon must be {0}")]
    BadEpsilon(&'static str),

    #[error("grid of {size} points exceeds the configured budget of {budget}")]
    GridBudget { size: u128, budget: u128 },

    #[error("enumeration of {size} cases exceeds the configured budget of {budget}")]
    EnumerationBudget { size: u128, budget: u128 },

    #[error("wrong supply regime: {0}")]
    SupplyRegime(&'static str),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("market-clearing condition fails: {0}")]
    ConditionFails(String),

    #[error("price vector is not a pure Nash equilibrium: {0}")]
    NotAnEquilibrium(String),

    #[error("up-consistency violated: {0}")]
    UpConsistency(String),

    #[error("post-condition failed: {0}")]
    Postcondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
