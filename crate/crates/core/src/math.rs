//! Elementary functions through `libm` so results do not depend on the
//! platform libm and the crate builds without `std`.

pub(crate) use libm::{atan2, cbrt, ceil, cos, exp, fabs as abs, hypot, lgamma, log as ln, sin, sqrt};

pub(crate) const PI: f64 = core::f64::consts::PI;
pub(crate) const TAU: f64 = core::f64::consts::TAU;

#[inline]
pub(crate) fn cis(phase: f64) -> crate::C64 {
    crate::C64::new(cos(phase), sin(phase))
}

#[inline]
pub(crate) fn cabs(z: crate::C64) -> f64 {
    hypot(z.re, z.im)
}

/// `x^k` by binary exponentiation.
pub(crate) fn pow_i(x: f64, k: i32) -> f64 {
    let mut base = if k < 0 { 1.0 / x } else { x };
    let mut e = k.unsigned_abs();
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}
