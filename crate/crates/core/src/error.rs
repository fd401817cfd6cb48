use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("denominator has zero constant term; no power-series expansion exists")]
    ZeroConstantTerm,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("zero polynomial has no root bound")]
    ZeroPolynomial,
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("zero period vector is not allowed")]
    ZeroPeriod,
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("dimension mismatch")]
    DimMismatch,
    #[error("leading coefficient vanishes at n = {n} and no initial value covers index {index}")]
    LeadingZero { n: usize, index: usize },
    #[error("box too small for the requested operation")]
    BoxTooSmall,
    #[error("no preperiod/period pair found within the given bounds")]
    NoPeriodFound,
    #[error("sequence too short: need at least {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("no verifiable rational fit within the given degree bounds")]
    NoFit,
    #[error("linear set is not free on the verification box")]
    NotFree,
    #[error("index {index} is outside the box on axis {axis}")]
    IndexOutOfBox { axis: usize, index: usize },
    #[error("recurrence does not hold on the input prefix")]
    RecurrenceUnsatisfied,
    #[error("system is not a homogeneous equality system")]
    NotHomogeneous,
    #[error("pipeline produced an unverifiable result: {0}")]
    PipelineUnsound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
