//! Interval enclosures for the power function x^y with no restriction on the
//! sign of the base or the form of the exponent.
//!
//! Everything reduces to an extension over nonnegative bases: negative bases
//! contribute through the exponent's parity class, so the full evaluation is a
//! hull of up to three nonnegative-base pieces with sign adjustments. The
//! `pow_nonneg` module evaluates that nonnegative-base core, `exponent`
//! classifies exponents by parity, `pow_extended` assembles the pieces, and
//! `oracle` cross-checks results by brute-force sampling.

pub mod cli;
pub mod error;
pub mod exponent;
pub mod fp;
pub mod interval;
pub mod oracle;
pub mod pow_extended;
pub mod pow_nonneg;

pub use error::Error;
pub use exponent::{ExponentKind, Rational};
pub use interval::Interval;
pub use oracle::{
    check_containment, estimate_tightness, sample_image, sample_image_exact, ContainmentReport,
    GridSpec, ImageSample, SamplePoint, TightnessEstimate,
};
pub use pow_extended::{
    pow_exact, pow_exact_with_slack, pow_float, pow_float_with_slack, pow_nonsingleton_exact,
    pow_nonsingleton_exact_with_slack, ExactExponent,
};
pub use pow_nonneg::{
    p0, p0_with_slack, pow_point_bounds, PointPowerBounds, DEFAULT_SLACK_ULPS,
};
