//! Brute-force image sampling used to cross-check interval results.
//!
//! The oracle never looks at the evaluator. It walks a finite grid of
//! (base, exponent) pairs, computes each power pointwise, and reports the
//! sampled values plus divergence flags. Negative bases are only paired with
//! exponents that are exact fractions over an odd denominator, where the
//! power is real-valued:
//!
//!   q = (even)/(odd)  ->  a^q = |a|^q
//!   q = (odd)/(odd)   ->  a^q = sign(a) * |a|^q
//!
//! Everything it reports is an under-approximation of the true image, so a
//! sound enclosure must contain every sample (up to a small comparison
//! tolerance absorbing the pointwise rounding of the samples themselves).

use std::fmt;

use crate::error::Error;
use crate::exponent::Rational;
use crate::fp;
use crate::interval::Interval;

/// Sampled values outside a result by more than this many ulps fail the
/// containment check.
pub const CONTAINMENT_SLACK_ULPS: u64 = 4;
/// Relative comparison tolerance paired with the ulp allowance above.
pub const CONTAINMENT_REL_TOL: f64 = 1e-12;

// Infinite interval ends are clipped to this magnitude before sampling.
const SAMPLE_CLIP: f64 = 1e300;
// Fraction numerators are kept well inside exact i64 <-> f64 range.
const NUM_CLAMP: f64 = (1u64 << 40) as f64;

/// Sampling resolution and fraction search space for the oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    base_samples: usize,
    exp_samples: usize,
    max_denominator: u32,
    divergence_threshold: f64,
}

impl GridSpec {
    pub fn new(
        base_samples: usize,
        exp_samples: usize,
        max_denominator: u32,
    ) -> Result<Self, Error> {
        if base_samples < 2 {
            return Err(Error::InvalidGrid("need at least 2 base samples"));
        }
        if exp_samples < 2 {
            return Err(Error::InvalidGrid("need at least 2 exponent samples"));
        }
        if max_denominator < 1 {
            return Err(Error::InvalidGrid("need a positive max denominator"));
        }
        Ok(GridSpec {
            base_samples,
            exp_samples,
            max_denominator,
            divergence_threshold: 1e300,
        })
    }

    /// Replaces the magnitude beyond which samples count as divergent.
    pub fn with_divergence_threshold(mut self, threshold: f64) -> Self {
        assert!(threshold > 0.0, "divergence threshold must be positive");
        self.divergence_threshold = threshold;
        self
    }

    pub fn base_samples(&self) -> usize {
        self.base_samples
    }

    pub fn exp_samples(&self) -> usize {
        self.exp_samples
    }

    pub fn max_denominator(&self) -> u32 {
        self.max_denominator
    }

    pub fn divergence_threshold(&self) -> f64 {
        self.divergence_threshold
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::new(100, 100, 99).expect("default grid is valid")
    }
}

/// One sampled power: value = base^exp up to pointwise rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePoint {
    pub base: f64,
    pub exp: f64,
    pub value: f64,
}

/// Multiset of sampled image values plus divergence flags.
#[derive(Clone, Debug, Default)]
pub struct ImageSample {
    points: Vec<SamplePoint>,
    unbounded_above: Option<SamplePoint>,
    unbounded_below: Option<SamplePoint>,
    divergence_threshold: f64,
}

impl ImageSample {
    fn new(divergence_threshold: f64) -> Self {
        ImageSample {
            points: Vec::new(),
            unbounded_above: None,
            unbounded_below: None,
            divergence_threshold,
        }
    }

    fn record(&mut self, base: f64, exp: f64, value: f64) {
        debug_assert!(!value.is_nan(), "oracle produced NaN at {base}^{exp}");
        let p = SamplePoint { base, exp, value };
        if value > self.divergence_threshold {
            self.unbounded_above.get_or_insert(p);
        } else if value < -self.divergence_threshold {
            self.unbounded_below.get_or_insert(p);
        } else {
            self.points.push(p);
        }
    }

    /// True when the sampled domain contained no evaluable pair at all.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
            && self.unbounded_above.is_none()
            && self.unbounded_below.is_none()
    }

    pub fn points(&self) -> &[SamplePoint] {
        &self.points
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.value)
    }

    pub fn min_value(&self) -> Option<f64> {
        self.values().reduce(f64::min)
    }

    pub fn max_value(&self) -> Option<f64> {
        self.values().reduce(f64::max)
    }

    pub fn saw_unbounded_above(&self) -> bool {
        self.unbounded_above.is_some()
    }

    pub fn saw_unbounded_below(&self) -> bool {
        self.unbounded_below.is_some()
    }

    pub fn divergence_threshold(&self) -> f64 {
        self.divergence_threshold
    }
}

// Uniform samples over an interval, endpoints included, infinite ends clipped.
fn linspace(iv: Interval, n: usize) -> Vec<f64> {
    let lo = iv.lo().max(-SAMPLE_CLIP);
    let hi = iv.hi().min(SAMPLE_CLIP);
    if lo >= hi {
        return vec![lo.min(hi)];
    }
    let steps = (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64) / steps
            }
        })
        .collect()
}

// Exact membership test for k/d in y, done by cross-multiplication. The fused
// multiply-add leaves the sign of bound*d - k intact (the true residual is a
// dyadic number at least one subnormal step from zero when it is nonzero).
fn fraction_in(y: Interval, k: i64, d: u32) -> bool {
    let kf = k as f64;
    let df = f64::from(d);
    let lo_ok = y.lo() == f64::NEG_INFINITY || y.lo().mul_add(df, -kf) <= 0.0;
    let hi_ok = y.hi() == f64::INFINITY || y.hi().mul_add(df, -kf) >= 0.0;
    lo_ok && hi_ok
}

// The best in-interval approximations to t with denominator d, one per
// numerator parity. Image extrema over negative bases sit at such fractions,
// so dedicated samples near the interval ends matter more than density in
// the middle.
fn push_nearest_by_parity(y: Interval, t: f64, d: u32, out: &mut Vec<(i64, u32)>) {
    let v = (t * f64::from(d)).clamp(-NUM_CLAMP, NUM_CLAMP);
    let k0 = v.round() as i64;
    let mut cands = [k0 - 3, k0 - 2, k0 - 1, k0, k0 + 1, k0 + 2, k0 + 3];
    cands.sort_by_key(|k| (v - *k as f64).abs().to_bits());
    for parity in [0i64, 1] {
        for &k in cands.iter().filter(|k| (*k).rem_euclid(2) == parity) {
            if fraction_in(y, k, d) {
                out.push((k, d));
                break;
            }
        }
    }
}

// Fractions k/d inside y with odd d <= max_denominator: roughly exp_samples
// of them spread across the interval (cycling through the denominators),
// plus the per-denominator best approximations of each parity to both ends.
fn odd_den_fractions(y: Interval, grid: &GridSpec) -> Vec<(i64, u32)> {
    let dens: Vec<u32> = (1..=grid.max_denominator).step_by(2).collect();
    let lo = y.lo().max(-SAMPLE_CLIP);
    let hi = y.hi().min(SAMPLE_CLIP);
    let n = grid.exp_samples;
    let mut out = Vec::with_capacity(n + 4 * dens.len());
    for (j, _) in (0..n).enumerate() {
        let d = dens[j % dens.len()];
        let t = if lo == hi {
            lo
        } else {
            lo + (hi - lo) * (j as f64) / ((n - 1) as f64)
        };
        let k = (t * f64::from(d)).round().clamp(-NUM_CLAMP, NUM_CLAMP) as i64;
        for cand in [k, k - 1, k + 1] {
            if fraction_in(y, cand, d) {
                out.push((cand, d));
                break;
            }
        }
    }
    for &d in &dens {
        push_nearest_by_parity(y, lo, d, &mut out);
        if hi != lo {
            push_nearest_by_parity(y, hi, d, &mut out);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

// 0^0 = 1 and 0^b = 0 for b > 0; negative exponents at zero are skipped by
// the callers.
fn point_pow_nonneg(a: f64, b: f64) -> f64 {
    debug_assert!(a >= 0.0);
    if a == 0.0 {
        if b == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        a.powf(b)
    }
}

/// Samples base^exp over the box x . y. Nonnegative bases pair with every
/// exponent sample; negative bases pair only with the odd-denominator
/// fractions found inside y.
pub fn sample_image(x: Interval, y: Interval, grid: &GridSpec) -> ImageSample {
    let mut s = ImageSample::new(grid.divergence_threshold);
    if !x.has_real_points() || !y.has_real_points() {
        return s;
    }
    let bases = linspace(x, grid.base_samples);
    let uniform = linspace(y, grid.exp_samples);
    let fractions = odd_den_fractions(y, grid);
    for &a in &bases {
        if a >= 0.0 {
            for &b in &uniform {
                if a == 0.0 && b < 0.0 {
                    continue;
                }
                s.record(a, b, point_pow_nonneg(a, b));
            }
            for &(k, d) in &fractions {
                let q = k as f64 / f64::from(d);
                if a == 0.0 && q < 0.0 {
                    continue;
                }
                s.record(a, q, point_pow_nonneg(a, q));
            }
        } else {
            for &(k, d) in &fractions {
                let q = k as f64 / f64::from(d);
                let mag = (-a).powf(q);
                let v = if k % 2 == 0 { mag } else { -mag };
                s.record(a, q, v);
            }
        }
    }
    s
}

/// Samples base^q for one exact rational exponent across bases in x, using
/// the parity class of q to decide how negative bases contribute.
pub fn sample_image_exact(x: Interval, q: &Rational, grid: &GridSpec) -> ImageSample {
    use crate::exponent::ExponentKind::*;
    let mut s = ImageSample::new(grid.divergence_threshold);
    if !x.has_real_points() {
        return s;
    }
    let qf = q.num() as f64 / q.den() as f64;
    let kind = q.kind();
    for &a in &linspace(x, grid.base_samples) {
        if a >= 0.0 {
            if a == 0.0 && q.num() < 0 {
                continue;
            }
            s.record(a, qf, point_pow_nonneg(a, qf));
        } else {
            let mag = (-a).powf(qf);
            match kind {
                FractionEO | EvenInteger => s.record(a, qf, mag),
                FractionOO | OddInteger => s.record(a, qf, -mag),
                FractionOE => {}
                NonIntegerDyadic | Irrational => unreachable!("rational kinds only"),
            }
        }
    }
    s
}

/// Outcome of checking one result interval against a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContainmentReport {
    pub pass: bool,
    pub first_violation: Option<SamplePoint>,
}

impl ContainmentReport {
    fn pass() -> Self {
        ContainmentReport {
            pass: true,
            first_violation: None,
        }
    }

    fn fail(p: SamplePoint) -> Self {
        ContainmentReport {
            pass: false,
            first_violation: Some(p),
        }
    }
}

impl fmt::Display for ContainmentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_violation {
            None => write!(f, "PASS"),
            Some(p) => write!(f, "FAIL {} {} {}", p.base, p.exp, p.value),
        }
    }
}

fn within_tol(bound: f64, v: f64) -> bool {
    bound.is_finite()
        && (fp::ulps_between(bound, v) <= CONTAINMENT_SLACK_ULPS
            || (bound - v).abs() <= CONTAINMENT_REL_TOL * bound.abs().max(v.abs()))
}

fn admits(result: Interval, v: f64) -> bool {
    let above_lo = v >= result.lo() || within_tol(result.lo(), v);
    let below_hi = v <= result.hi() || within_tol(result.hi(), v);
    above_lo && below_hi
}

/// Passes iff every sampled value lies in `result` (within the comparison
/// tolerance) and each divergence flag is answered by a bound at or beyond
/// the sample's divergence threshold, normally an infinite one.
pub fn check_containment(result: Interval, sample: &ImageSample) -> ContainmentReport {
    if sample.is_empty() {
        return ContainmentReport::pass();
    }
    if result.is_empty() {
        let witness = sample
            .points
            .first()
            .copied()
            .or(sample.unbounded_above)
            .or(sample.unbounded_below)
            .expect("non-empty sample has a witness");
        return ContainmentReport::fail(witness);
    }
    for &p in &sample.points {
        if !admits(result, p.value) {
            return ContainmentReport::fail(p);
        }
    }
    if let Some(w) = sample.unbounded_above {
        if result.hi() < sample.divergence_threshold {
            return ContainmentReport::fail(w);
        }
    }
    if let Some(w) = sample.unbounded_below {
        if result.lo() > -sample.divergence_threshold {
            return ContainmentReport::fail(w);
        }
    }
    ContainmentReport::pass()
}

/// Gap between each finite result bound and the sampled extremum on that
/// side. `None` marks a side that is not applicable (infinite bound, empty
/// sample, or divergence on that side).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TightnessEstimate {
    pub lower_abs: Option<f64>,
    pub lower_rel: Option<f64>,
    pub upper_abs: Option<f64>,
    pub upper_rel: Option<f64>,
}

pub fn estimate_tightness(result: Interval, sample: &ImageSample) -> TightnessEstimate {
    let mut est = TightnessEstimate::default();
    if result.is_empty() || sample.points.is_empty() {
        return est;
    }
    if result.lo().is_finite() && !sample.saw_unbounded_below() {
        let m = sample.min_value().expect("points checked non-empty");
        let abs = (m - result.lo()).max(0.0);
        est.lower_abs = Some(abs);
        est.lower_rel = Some(abs / m.abs().max(result.lo().abs()).max(f64::MIN_POSITIVE));
    }
    if result.hi().is_finite() && !sample.saw_unbounded_above() {
        let m = sample.max_value().expect("points checked non-empty");
        let abs = (result.hi() - m).max(0.0);
        est.upper_abs = Some(abs);
        est.upper_rel = Some(abs / m.abs().max(result.hi().abs()).max(f64::MIN_POSITIVE));
    }
    est
}
