//! Angle normalization helpers shared by the torus, unit and gesture code.

use std::f64::consts::{PI, TAU};

/// Reduces an angle into the principal range `(-π, π]`.
pub fn normalize(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Minimal representative of `a - b` modulo 2π, in `[-π, π]`.
#[inline]
pub fn wrapped_difference(a: f64, b: f64) -> f64 {
    normalize(a - b)
}

/// Unsigned angular gap on the circle, in `[0, π]`.
#[inline]
pub fn circular_distance(a: f64, b: f64) -> f64 {
    wrapped_difference(a, b).abs()
}
