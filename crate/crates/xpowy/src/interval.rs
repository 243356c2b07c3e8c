//! Closed intervals over the extended reals, with a first-class empty value.
//!
//! Bounds are f64 and may be infinite. NaN is rejected at construction, and
//! negative zero is normalized to +0.0 so that derived equality is exact set
//! equality. The empty interval has a single canonical representation and
//! behaves as the absorbing element of intersection-like operations.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::fp;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

// Canonical empty: lo > hi picked so min/max folds stay well-behaved.
const EMPTY: Interval = Interval {
    lo: f64::INFINITY,
    hi: f64::NEG_INFINITY,
};

fn norm_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Interval {
    /// Builds [lo, hi]. Inverted bounds give the empty interval; NaN is an error.
    pub fn new(lo: f64, hi: f64) -> Result<Self, Error> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::NanBound);
        }
        if lo > hi {
            return Ok(EMPTY);
        }
        Ok(Interval {
            lo: norm_zero(lo),
            hi: norm_zero(hi),
        })
    }

    pub const fn empty() -> Self {
        EMPTY
    }

    pub fn singleton(v: f64) -> Result<Self, Error> {
        Self::new(v, v)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Lower bound; the canonical empty reports +inf.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Upper bound; the canonical empty reports -inf.
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        if self.is_empty() {
            None
        } else {
            Some((self.lo, self.hi))
        }
    }

    /// Smallest interval containing both operands. Empty is the identity.
    pub fn hull(self, other: Self) -> Self {
        if self.is_empty() {
            return other;
        }
        if other.is_empty() {
            return self;
        }
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Pointwise negation: -[lo, hi] = [-hi, -lo].
    pub fn negate(self) -> Self {
        if self.is_empty() {
            return EMPTY;
        }
        Interval {
            lo: norm_zero(-self.hi),
            hi: norm_zero(-self.lo),
        }
    }

    /// Intersection with [0, +inf]. Entirely negative inputs become empty.
    pub fn clamp_nonneg(self) -> Self {
        if self.is_empty() || self.hi < 0.0 {
            return EMPTY;
        }
        Interval {
            lo: norm_zero(self.lo.max(0.0)),
            hi: self.hi,
        }
    }

    pub fn is_singleton(&self) -> bool {
        !self.is_empty() && self.lo == self.hi
    }

    /// Widens each finite bound outward by `ulps` representable steps.
    pub fn widen_outward(self, ulps: u32) -> Self {
        if self.is_empty() {
            return EMPTY;
        }
        Interval {
            lo: norm_zero(fp::step_down(self.lo, ulps)),
            hi: norm_zero(fp::step_up(self.hi, ulps)),
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        !v.is_nan() && self.lo <= v && v <= self.hi
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        self.is_empty() || (!other.is_empty() && other.lo <= self.lo && self.hi <= other.hi)
    }

    /// True when the interval contains at least one real number. A nonempty
    /// interval fails this only as an infinite singleton such as [inf, inf].
    pub fn has_real_points(&self) -> bool {
        !self.is_empty() && !(self.lo == self.hi && self.lo.is_infinite())
    }
}

impl std::ops::Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        self.negate()
    }
}

// Shortest round-trip formatting. Plain decimal for moderate magnitudes,
// exponent notation outside [1e-4, 1e19) so bounds stay readable.
fn fmt_bound(v: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v == f64::INFINITY {
        write!(f, "inf")
    } else if v == f64::NEG_INFINITY {
        write!(f, "-inf")
    } else if v == 0.0 {
        write!(f, "0")
    } else if (1e-4..1e19).contains(&v.abs()) {
        write!(f, "{v}")
    } else {
        write!(f, "{v:e}")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        write!(f, "[")?;
        fmt_bound(self.lo, f)?;
        write!(f, ",")?;
        fmt_bound(self.hi, f)?;
        write!(f, "]")
    }
}

/// Why a piece of interval text was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseIntervalError {
    Syntax,
    BadBound(String),
    NanBound,
    Inverted,
}

impl fmt::Display for ParseIntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseIntervalError::Syntax => write!(f, "expected '[lo,hi]' or 'empty'"),
            ParseIntervalError::BadBound(t) => write!(f, "invalid bound '{t}'"),
            ParseIntervalError::NanBound => write!(f, "NaN bound"),
            ParseIntervalError::Inverted => write!(f, "inverted bounds"),
        }
    }
}

impl std::error::Error for ParseIntervalError {}

impl FromStr for Interval {
    type Err = ParseIntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "empty" {
            return Ok(EMPTY);
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or(ParseIntervalError::Syntax)?;
        let mut parts = inner.splitn(2, ',');
        let lo_txt = parts.next().ok_or(ParseIntervalError::Syntax)?.trim();
        let hi_txt = parts.next().ok_or(ParseIntervalError::Syntax)?.trim();
        let parse = |t: &str| -> Result<f64, ParseIntervalError> {
            let v: f64 = t
                .parse()
                .map_err(|_| ParseIntervalError::BadBound(t.to_string()))?;
            if v.is_nan() {
                return Err(ParseIntervalError::NanBound);
            }
            Ok(v)
        };
        let lo = parse(lo_txt)?;
        let hi = parse(hi_txt)?;
        if lo > hi {
            return Err(ParseIntervalError::Inverted);
        }
        Ok(Interval::new(lo, hi).expect("bounds checked"))
    }
}
