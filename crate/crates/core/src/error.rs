use thiserror::Error;

/// Errors raised by the exact-arithmetic kernels and the family/ring constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a polynomial: exact division by the denominator factors leaves a remainder")]
    NotAPolynomial,

    #[error("too large: degree {degree} exceeds the expansion cap {cap}")]
    TooLarge { degree: i128, cap: usize },

    #[error("nonzero order {order} at t = 1; the value at 1 is a pole or a zero")]
    NonzeroOrderAtOne { order: i64 },

    #[error("zero has no square class")]
    ZeroSquareClass,

    #[error("trial division bound {bound} exceeded while factoring {value}")]
    FactorBoundExceeded { value: String, bound: u64 },

    #[error("invalid weight {0}: weights must be rationals greater than 1")]
    InvalidWeight(String),

    #[error("empty weight system")]
    EmptyWeights,

    #[error("non-integral divisor: coefficient {coefficient} at Lambda_{index}")]
    NonIntegralDivisor { index: u64, coefficient: String },

    #[error("non-integral Milnor number {0}")]
    NonIntegralMilnorNumber(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    #[error("smooth germ: {0}")]
    SmoothGerm(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("rank arithmetic gives {0}, which is not a Betti number")]
    RankArithmetic(String),

    #[error("no fundamental class: top degree has rank {0}")]
    NoFundamentalClass(usize),

    #[error("ring audit failed: {0}")]
    RingAudit(String),

    #[error("cutoff too small: {0}")]
    CutoffTooSmall(String),

    #[error("not simply connected: ring has {0} basis elements in degree 1")]
    NotSimplyConnected(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
