use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state grid is empty")]
    EmptyGrid,
    #[error("state grid is not strictly increasing at index {index}")]
    UnorderedGrid { index: usize },
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },
    #[error("weight vector has {got} entries but the grid has {expected} states")]
    LengthMismatch { expected: usize, got: usize },
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("weights sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("state index {index} out of range for a grid of {len} states")]
    StateIndexOutOfRange { index: usize, len: usize },
    #[error("regularity has no members")]
    EmptyRegularity,
    #[error("member {index} lives on a different state grid")]
    GridMismatch { index: usize },
    #[error("member {index} duplicates member {original}")]
    DuplicateMember { index: usize, original: usize },
    #[error("sample series is empty")]
    EmptySamples,
    #[error("window of {window} exceeds the {samples} available samples")]
    WindowTooLarge { window: usize, samples: usize },
    #[error("{name} must be positive")]
    NonPositive { name: &'static str },
    #[error("capital must be positive, got {0}")]
    NonPositiveCapital(f64),
    #[error("borrowed funds must be non-negative, got {0}")]
    NegativeBorrowed(f64),
    #[error("leverage must be non-negative, got {0}")]
    NegativeLeverage(f64),
    #[error("price must be non-negative, got {0}")]
    NegativePrice(f64),
    #[error("decision set is empty")]
    EmptyDecisionSet,
    #[error("leverage chain has no levels")]
    EmptyChain,
    #[error("invalid leverage window [{u_min}, {u_max}]")]
    InvalidWindow { u_min: f64, u_max: f64 },
    #[error("grid search needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("invalid utility: {0}")]
    InvalidUtility(String),
    #[error("criterion `{0}` is not linear in leverage; use a grid search")]
    UnsupportedCriterion(String),
}
