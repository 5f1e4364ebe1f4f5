use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("slot mismatch: {0}")]
    SlotMismatch(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("invariance violated: {0}")]
    NotInvariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
