use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("period {0} exceeds the supported maximum")]
    PeriodTooLarge(u64),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("invalid horizon schedule: {0}")]
    InvalidSchedule(String),
    #[error("submeasure violates {property} on window ending at {at}")]
    SubmeasureViolation { property: &'static str, at: u64 },
    #[error("ground set size {0} out of range")]
    GroundSize(usize),
    #[error("missing capacity value for subset {0}")]
    MissingSubset(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid functional weights: {0}")]
    InvalidFunctional(String),
    #[error("invalid coordinate ideal: {0}")]
    InvalidIdeal(String),
    #[error("estimate where an exact value is required: {0}")]
    NotExact(String),
    #[error("too many atoms: {0}")]
    TooManyAtoms(usize),
    #[error("capacity is not normalized: {0}")]
    NotNormalized(String),
    #[error("not representable: {0}")]
    NotRepresentable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
