//! Exponent parity classes.
//!
//! For a real exponent y the set of bases on which x^y is real-valued depends
//! only on which of these classes y falls in:
//!
//!   y = (even)/(odd)   all real bases, x^y is even in x
//!   y = (odd)/(odd)    all real bases, x^y is odd in x
//!   y = (odd)/(even)   nonnegative bases only
//!   y irrational       nonnegative bases only
//!
//! Fractions are always taken in lowest terms; machine exponents are dyadic
//! rationals, so classifying an f64 can only yield an integer class or the
//! odd/even ("non-integer dyadic") class.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    /// Reduces num/den to lowest terms, moving the sign to the numerator.
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        if num == 0 {
            return Ok(Rational { num: 0, den: 1 });
        }
        let negative = (num < 0) != (den < 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs());
        let n = num.unsigned_abs() / g;
        let d = den.unsigned_abs() / g;
        let num = if negative {
            if n > i64::MIN.unsigned_abs() {
                return Err(Error::RationalOverflow);
            }
            if n == i64::MIN.unsigned_abs() {
                i64::MIN
            } else {
                -(n as i64)
            }
        } else {
            if n > i64::MAX as u64 {
                return Err(Error::RationalOverflow);
            }
            n as i64
        };
        Ok(Rational { num, den: d })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn kind(&self) -> ExponentKind {
        ExponentKind::classify_rational(self)
    }

    /// Tightest practical f64 enclosure of the exact value: a singleton when
    /// the value is representable, otherwise one ulp wide whenever both parts
    /// convert to f64 exactly (a residual sign decides the side), with a
    /// conservative widened quotient beyond 2^53.
    pub fn to_f64_enclosure(&self) -> (f64, f64) {
        const EXACT: u64 = 1 << 53;
        let nf = self.num as f64;
        let df = self.den as f64;
        let q = nf / df;
        if self.num.unsigned_abs() < EXACT && self.den < EXACT {
            // q*den - num is computed with one rounding; its sign is exact
            // because the true residual, when nonzero, is a dyadic number no
            // smaller than the least subnormal (see the unit tests).
            let r = q.mul_add(df, -nf);
            if r == 0.0 {
                (q, q)
            } else if r > 0.0 {
                (q.next_down(), q)
            } else {
                (q, q.next_up())
            }
        } else {
            (crate::fp::step_down(q, 3), crate::fp::step_up(q, 3))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n_txt, d_txt) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i64 = n_txt
            .parse()
            .map_err(|_| format!("invalid integer '{n_txt}'"))?;
        let den: i64 = d_txt
            .parse()
            .map_err(|_| format!("invalid integer '{d_txt}'"))?;
        Rational::new(num, den).map_err(|e| e.to_string())
    }
}

/// Parity class of an exponent, deciding which bases contribute real values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExponentKind {
    EvenInteger,
    OddInteger,
    /// Dyadic but not integral, e.g. 0.5 = 1/2: an odd/even fraction.
    NonIntegerDyadic,
    /// even/odd fraction with denominator > 1.
    FractionEO,
    /// odd/odd fraction with denominator > 1.
    FractionOO,
    /// odd/even fraction.
    FractionOE,
    /// Only produced by caller assertion, never by classification.
    Irrational,
}

impl ExponentKind {
    /// Class of an exact rational (already in lowest terms by construction).
    pub fn classify_rational(q: &Rational) -> ExponentKind {
        let num_even = q.num % 2 == 0;
        if q.den == 1 {
            if num_even {
                ExponentKind::EvenInteger
            } else {
                ExponentKind::OddInteger
            }
        } else if q.den % 2 == 1 {
            if num_even {
                ExponentKind::FractionEO
            } else {
                ExponentKind::FractionOO
            }
        } else {
            // lowest terms forces an odd numerator over an even denominator
            ExponentKind::FractionOE
        }
    }

    /// Class of a machine exponent. Every finite f64 is a dyadic rational, so
    /// the result is an integer class or NonIntegerDyadic; parity tests on
    /// the value are exact (fmod by 2 is exact for doubles).
    pub fn classify_machine(y: f64) -> Result<ExponentKind, Error> {
        if !y.is_finite() {
            return Err(Error::NonFiniteExponent);
        }
        if y != y.trunc() {
            return Ok(ExponentKind::NonIntegerDyadic);
        }
        if y % 2.0 == 0.0 {
            Ok(ExponentKind::EvenInteger)
        } else {
            Ok(ExponentKind::OddInteger)
        }
    }
}
