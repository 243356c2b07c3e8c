//! Error type shared across the crate.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("interval bound is NaN")]
    NanBound,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("reduced rational does not fit the fixed-width representation")]
    RationalOverflow,
    #[error("exponent is not a finite machine number")]
    NonFiniteExponent,
    #[error("zero base with a negative exponent is outside the domain")]
    ZeroToNegative,
    #[error("negative base is outside the nonnegative-base extension")]
    NegativeBase,
    #[error("invalid sampling grid: {0}")]
    InvalidGrid(&'static str),
    #[error("singleton exponent interval: evaluate it as an exact exponent instead")]
    SingletonExponent,
}
