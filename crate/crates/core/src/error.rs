use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter violates a structural constraint.
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("bad defining polynomial: {0}")]
    Poly(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration of {required} items exceeds budget {budget}; {hint}")]
    Budget {
        required: u128,
        budget: u128,
        hint: &'static str,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
