//! Bessel functions of the first kind, integer order.
//!
//! For `x <= 30` the defining power series
//! `J_n(x) = Σ_m (-1)^m (x/2)^{2m+n} / (m! (m+n)!)` is summed in double-double
//! arithmetic, which keeps absolute accuracy near `1e-16` despite the
//! cancellation (the largest term at `x = 30` is of order `1e11`). Beyond that
//! the series is abandoned for Miller's downward recurrence normalized by
//! `J_0 + 2 Σ J_{2k} = 1`.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::math;

/// Largest supported `|n|`.
pub const MAX_ORDER: i32 = 64;

/// Upper end of the documented accuracy range.
pub const MAX_ARGUMENT: f64 = 64.0;

/// Arguments above this use the downward recurrence instead of the series.
pub const SERIES_LIMIT: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselSeriesConfig {
    pub max_terms: usize,
    /// Tail bound: the series stops once a term drops below this while the
    /// terms are decreasing.
    pub abs_tol: f64,
}

impl BesselSeriesConfig {
    pub fn new(max_terms: usize, abs_tol: f64) -> Result<Self> {
        if max_terms < 1 {
            return Err(Error::InvalidConfig("max_terms must be >= 1"));
        }
        if !(abs_tol >= 0.0) {
            return Err(Error::InvalidConfig("abs_tol must be >= 0"));
        }
        Ok(BesselSeriesConfig { max_terms, abs_tol })
    }
}

impl Default for BesselSeriesConfig {
    fn default() -> Self {
        BesselSeriesConfig { max_terms: 300, abs_tol: 1e-17 }
    }
}

/// `J_order(x)` for `x >= 0` and `|order| <= 64`.
///
/// Negative orders use `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(order: i32, x: f64, cfg: &BesselSeriesConfig) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::NegativeArgument(x));
    }
    if order.abs() > MAX_ORDER {
        return Err(Error::OrderOutOfRange(order));
    }
    let n = order.unsigned_abs();
    let value = if x <= SERIES_LIMIT { series(n, x, cfg)? } else { miller(n, x) };
    Ok(if order < 0 && n % 2 == 1 { -value } else { value })
}

/// `J_order(x)` for any real `x`, through `J_n(-x) = (-1)^n J_n(x)`.
pub fn bessel_j_real(order: i32, x: f64) -> Result<f64> {
    let value = bessel_j(order, math::abs(x), &BesselSeriesConfig::default())?;
    Ok(if x < 0.0 && order.rem_euclid(2) == 1 { -value } else { value })
}

/// `J_n'(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2`.
pub fn bessel_j_prime(order: i32, x: f64, cfg: &BesselSeriesConfig) -> Result<f64> {
    Ok(0.5 * (bessel_j(order - 1, x, cfg)? - bessel_j(order + 1, x, cfg)?))
}

/// The series also runs until the tail is negligible relative to the sum,
/// so values far below `abs_tol` keep their sign.
const RELATIVE_TAIL: f64 = 1e-17;

pub(crate) fn series(n: u32, x: f64, cfg: &BesselSeriesConfig) -> Result<f64> {
    let half = 0.5 * x;
    let mut term = Dd::ONE;
    for j in 1..=n {
        term = term.mul_f64(half).div_f64(j as f64);
    }
    if term.is_zero() {
        return Ok(0.0);
    }
    let step = -Dd::from_prod(half, half);
    let mut sum = term;
    let mut previous = term.abs().to_f64();
    for m in 1..cfg.max_terms {
        term = (term * step).div_f64((m as f64) * ((m as u32 + n) as f64));
        sum = sum + term;
        let magnitude = term.abs().to_f64();
        let decreasing = magnitude < previous || magnitude == 0.0;
        if decreasing && magnitude < cfg.abs_tol && magnitude <= RELATIVE_TAIL * sum.abs().to_f64() {
            return Ok(sum.to_f64());
        }
        previous = magnitude;
    }
    Err(Error::SeriesNotConverged { order: n as i32, x, terms: cfg.max_terms })
}

/// Miller's algorithm: recur downward from a start index well above both
/// `n` and `x`, rescaling to stay in range, and normalize with the Neumann
/// sum `J_0 + 2 Σ_{k>=1} J_{2k} = 1`.
pub(crate) fn miller(n: u32, x: f64) -> f64 {
    const RESCALE: f64 = 1e200;
    let top = (n as f64).max(math::ceil(x)) + 30.0 + math::ceil(8.0 * math::cbrt(x));
    let mut start = top as u32;
    if start % 2 == 1 {
        start += 1;
    }
    let two_over_x = 2.0 / x;
    let mut above = 0.0_f64;
    let mut current = 1e-30_f64;
    let mut wanted = 0.0_f64;
    let mut norm = 0.0_f64;
    let mut k = start;
    while k > 0 {
        let below = (k as f64) * two_over_x * current - above;
        above = current;
        current = below;
        k -= 1;
        if k == n {
            wanted = current;
        }
        if k > 0 && k.is_multiple_of(2) {
            norm += 2.0 * current;
        }
        if math::abs(current) > RESCALE {
            current /= RESCALE;
            above /= RESCALE;
            wanted /= RESCALE;
            norm /= RESCALE;
        }
    }
    norm += current;
    if n == 0 {
        wanted = current;
    }
    wanted / norm
}

/// Smallest `α > 0` with `J_order(α) = 0`.
///
/// Scans upward in steps of `π/4` for a sign change, bisects the bracket to
/// width `1e-8`, then polishes with Newton steps using
/// `J_n' = J_{n-1} - (n/x) J_n`.
pub fn first_positive_zero(order: i32) -> Result<f64> {
    if order < 0 {
        return Err(Error::InvalidConfig("first_positive_zero needs order >= 0"));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderOutOfRange(order));
    }
    let cfg = BesselSeriesConfig::default();
    let (lo, hi) = bracket_first_zero(order, &cfg)?;
    let mut lo = lo;
    let mut hi = hi;
    let mut f_lo = bessel_j(order, lo, &cfg)?;
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        let f_mid = bessel_j(order, mid, &cfg)?;
        if (f_mid > 0.0) == (f_lo > 0.0) && f_mid != 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let f = bessel_j(order, x, &cfg)?;
        let df = bessel_j(order - 1, x, &cfg)? - order as f64 / x * f;
        if df == 0.0 {
            break;
        }
        let dx = f / df;
        x -= dx;
        if math::abs(dx) <= 1e-16 * x {
            break;
        }
    }
    Ok(x)
}

/// Returns `(a, b)` with `J_order` positive at `a` and non-positive at `b`.
pub fn bracket_first_zero(order: i32, cfg: &BesselSeriesConfig) -> Result<(f64, f64)> {
    let step = math::PI / 4.0;
    let mut a = step;
    // J_n > 0 on (0, j_{n,1}) and the first scan point is always inside
    debug_assert!(bessel_j(order, a, cfg)? > 0.0);
    while a < 200.0 {
        let b = a + step;
        if bessel_j(order, b, cfg)? <= 0.0 {
            return Ok((a, b));
        }
        a = b;
    }
    Err(Error::InvalidConfig("no sign change found below x = 200"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> BesselSeriesConfig {
        BesselSeriesConfig::default()
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0, &cfg()).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0, &cfg()).unwrap(), 0.0);
        assert_eq!(bessel_j(7, 0.0, &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn j0_at_one() {
        // independent plain f64 partial sums, 40 terms (no cancellation at x = 1)
        let mut term = 1.0_f64;
        let mut sum = 1.0_f64;
        for m in 1..40 {
            term *= -0.25 / ((m * m) as f64);
            sum += term;
        }
        let value = bessel_j(0, 1.0, &cfg()).unwrap();
        assert!((value - sum).abs() < 1e-16);
        assert!((value - 0.765_197_686_557_966_6).abs() < 1e-15);
    }

    #[test]
    fn negative_order_reflection() {
        for n in 1..10 {
            let plus = bessel_j(n, 3.7, &cfg()).unwrap();
            let minus = bessel_j(-n, 3.7, &cfg()).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(minus, sign * plus);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(bessel_j(0, -1.0, &cfg()), Err(Error::NegativeArgument(-1.0)));
        assert_eq!(bessel_j(65, 1.0, &cfg()), Err(Error::OrderOutOfRange(65)));
        assert!(bessel_j(0, f64::NAN, &cfg()).is_err());
        assert!(BesselSeriesConfig::new(0, 1e-10).is_err());
        assert!(BesselSeriesConfig::new(10, -1.0).is_err());
        let short = BesselSeriesConfig::new(3, 1e-17).unwrap();
        assert!(matches!(bessel_j(0, 20.0, &short), Err(Error::SeriesNotConverged { .. })));
    }

    #[test]
    fn series_and_recurrence_agree_in_overlap() {
        for n in [0u32, 1, 2, 5, 11, 20] {
            for i in 0..=20 {
                let x = 20.0 + 0.5 * i as f64;
                let s = series(n, x, &cfg()).unwrap();
                let m = miller(n, x);
                assert!((s - m).abs() < 1e-14, "n={n} x={x} series={s} miller={m}");
            }
        }
    }

    #[test]
    fn first_zeros() {
        let z0 = first_positive_zero(0).unwrap();
        let z1 = first_positive_zero(1).unwrap();
        assert!((z0 - 2.404_825_557_695_773).abs() < 1e-12 * z0);
        assert!((z1 - 3.831_705_970_207_512).abs() < 1e-12 * z1);
        assert!(first_positive_zero(-1).is_err());
    }

    #[test]
    fn zeros_increase_with_order() {
        let mut last = 0.0;
        for n in 0..=20 {
            let z = first_positive_zero(n).unwrap();
            assert!(z > last);
            let (a, b) = bracket_first_zero(n, &cfg()).unwrap();
            assert!(a < z && z < b);
            last = z;
        }
    }
}
