use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("residual denominator after reduction: {0}")]
    ResidualDenominator(String),

    #[error("zero value supplied for variable {0} which appears with a negative exponent")]
    ZeroAtNegativeExponent(usize),

    #[error("cap exceeded: {what} is {actual}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("representation list is not jointly faithful: element {0} acts trivially")]
    NotFaithful(usize),

    #[error("element {0} is not central in the group")]
    NotCentral(usize),

    #[error("element {element} moves point {point}")]
    ActsNontrivially { element: usize, point: usize },

    #[error("carrier is not a global-stabilizer slice: {0}")]
    NotASlice(String),

    #[error("descriptor error at {pointer}: {message}")]
    Descriptor { pointer: String, message: String },
}

impl Error {
    pub fn descriptor(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Descriptor {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
