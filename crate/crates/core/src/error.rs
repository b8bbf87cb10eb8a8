use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("q = {0} is not an odd prime power")]
    InvalidFieldSize(u64),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: u64, found: u64 },

    #[error("enumeration budget exceeded for {what}: needs {needed}, budget {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("outside supported regime: {0}")]
    Regime(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(String),

    /// A computed quantity contradicts an identity that must hold. Seeing this
    /// means the implementation is wrong.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
