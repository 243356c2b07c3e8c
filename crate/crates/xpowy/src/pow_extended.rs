//! Interval power over bases of any sign.
//!
//! A negative base reaches a real value only when the exponent is a fraction
//! over an odd denominator. Split those by numerator parity: exponents with
//! an even numerator give an even function of the base, odd numerators an odd
//! function. Both parity classes are dense in any exponent interval that is
//! not a single point, so over a non-singleton y the image is enclosed by
//! three nonnegative-base pieces:
//!
//!   p0(x, y)  hull  p0(-x, y)  hull  -p0(-x, y)
//!
//! where p0 clamps its base to [0, inf). A singleton machine exponent is an
//! integer or a non-integer dyadic, and its parity selects which of the
//! pieces remain. An exactly known exponent keeps its own parity class, with
//! a machine interval around it tight enough that the corner evaluation only
//! pays a couple of ulps.

use crate::error::Error;
use crate::exponent::{ExponentKind, Rational};
use crate::interval::Interval;
use crate::pow_nonneg::{p0_with_slack, DEFAULT_SLACK_ULPS};

/// An exponent known exactly, rather than via machine interval endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExactExponent {
    /// An exact rational.
    Rational(Rational),
    /// An exponent asserted to be irrational, carried by its nearest machine
    /// value. The assertion matters: irrational exponents pair only with
    /// nonnegative bases.
    Irrational { approx: f64 },
}

impl ExactExponent {
    pub fn rational(num: i64, den: i64) -> Result<Self, Error> {
        Ok(ExactExponent::Rational(Rational::new(num, den)?))
    }

    /// Asserts the exponent is irrational; `approx` must be a machine value
    /// adjacent to it (at worst one ulp away on either side).
    pub fn irrational(approx: f64) -> Result<Self, Error> {
        if !approx.is_finite() {
            return Err(Error::NonFiniteExponent);
        }
        Ok(ExactExponent::Irrational { approx })
    }

    pub fn kind(&self) -> ExponentKind {
        match self {
            ExactExponent::Rational(q) => q.kind(),
            ExactExponent::Irrational { .. } => ExponentKind::Irrational,
        }
    }

    /// Machine interval guaranteed to contain the exact exponent.
    pub fn machine_enclosure(&self) -> Interval {
        match self {
            ExactExponent::Rational(q) => {
                let (lo, hi) = q.to_f64_enclosure();
                Interval::new(lo, hi).expect("quotient bounds are finite")
            }
            ExactExponent::Irrational { approx } => {
                Interval::new(approx.next_down(), approx.next_up()).expect("finite window")
            }
        }
    }
}

/// Interval power for a machine-interval exponent, default slack.
pub fn pow_float(x: Interval, y: Interval) -> Interval {
    pow_float_with_slack(x, y, DEFAULT_SLACK_ULPS)
}

/// Interval power for a machine-interval exponent.
///
/// Every machine value in y is a dyadic rational, so a singleton y keeps only
/// the pieces its parity allows; any wider y contains both parity classes
/// densely and takes all three.
pub fn pow_float_with_slack(x: Interval, y: Interval, slack_ulps: u32) -> Interval {
    if x.is_empty() || y.is_empty() {
        return Interval::empty();
    }
    if y.is_singleton() {
        let b = y.lo();
        if b.is_infinite() {
            // a singleton at infinity holds no real exponent
            return Interval::empty();
        }
        let p = p0_with_slack(x, y, slack_ulps);
        return match ExponentKind::classify_machine(b).expect("finite singleton classifies") {
            ExponentKind::EvenInteger => p.hull(p0_with_slack(-x, y, slack_ulps)),
            ExponentKind::OddInteger => p.hull(-p0_with_slack(-x, y, slack_ulps)),
            _ => p,
        };
    }
    let pn = p0_with_slack(-x, y, slack_ulps);
    p0_with_slack(x, y, slack_ulps).hull(pn).hull(-pn)
}

/// Interval power for an exactly known exponent, default slack.
pub fn pow_exact(x: Interval, y: &ExactExponent) -> Interval {
    pow_exact_with_slack(x, y, DEFAULT_SLACK_ULPS)
}

/// Interval power for an exactly known exponent.
///
/// The exponent's parity class decides how negative bases contribute; the
/// evaluation itself runs over a machine enclosure of the exact value.
pub fn pow_exact_with_slack(x: Interval, y: &ExactExponent, slack_ulps: u32) -> Interval {
    let yi = y.machine_enclosure();
    let p = p0_with_slack(x, yi, slack_ulps);
    match y.kind() {
        ExponentKind::FractionEO | ExponentKind::EvenInteger => {
            p.hull(p0_with_slack(-x, yi, slack_ulps))
        }
        ExponentKind::FractionOO | ExponentKind::OddInteger => {
            p.hull(-p0_with_slack(-x, yi, slack_ulps))
        }
        ExponentKind::FractionOE | ExponentKind::NonIntegerDyadic | ExponentKind::Irrational => p,
    }
}

/// Interval power where y is read as a set of exact reals, default slack.
pub fn pow_nonsingleton_exact(x: Interval, y: Interval) -> Result<Interval, Error> {
    pow_nonsingleton_exact_with_slack(x, y, DEFAULT_SLACK_ULPS)
}

/// Interval power where y is read as a set of exact reals rather than a set
/// of machine values.
///
/// For a non-singleton y both parity classes are dense inside it, so the
/// result is the same three-piece hull as the machine evaluation. A singleton
/// y is rejected: there the answer hinges on the exact exponent's class,
/// which a bare interval cannot express — use an [`ExactExponent`].
pub fn pow_nonsingleton_exact_with_slack(
    x: Interval,
    y: Interval,
    slack_ulps: u32,
) -> Result<Interval, Error> {
    if y.is_singleton() {
        return Err(Error::SingletonExponent);
    }
    let pn = p0_with_slack(-x, y, slack_ulps);
    Ok(p0_with_slack(x, y, slack_ulps).hull(pn).hull(-pn))
}
