//! Small helpers for walking the f64 representation space.

/// Moves `v` up by `n` representable steps. Infinities stay put.
pub fn step_up(v: f64, n: u32) -> f64 {
    if v.is_infinite() {
        return v;
    }
    let mut v = v;
    for _ in 0..n {
        v = v.next_up();
    }
    v
}

/// Moves `v` down by `n` representable steps. Infinities stay put.
pub fn step_down(v: f64, n: u32) -> f64 {
    if v.is_infinite() {
        return v;
    }
    let mut v = v;
    for _ in 0..n {
        v = v.next_down();
    }
    v
}

// Order-preserving bit key: negatives are flipped so the integer order of the
// keys matches the numeric order of the floats, with -0 and +0 adjacent.
fn monotone_key(x: f64) -> u64 {
    let b = x.to_bits();
    if b >> 63 == 1 {
        !b
    } else {
        b | (1 << 63)
    }
}

/// Distance between two non-NaN floats counted in representable steps.
pub fn ulps_between(a: f64, b: f64) -> u64 {
    debug_assert!(!a.is_nan() && !b.is_nan());
    monotone_key(a).abs_diff(monotone_key(b))
}
