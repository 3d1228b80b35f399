//! One-dimensional adaptive quadrature: composite Gauss-Legendre and
//! adaptive Simpson, both certified by comparing a panel against its two
//! halves.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureRule {
    GaussLegendreComposite,
    AdaptiveSimpson,
}

impl QuadratureRule {
    pub fn name(self) -> &'static str {
        match self {
            QuadratureRule::GaussLegendreComposite => "gauss-legendre-composite",
            QuadratureRule::AdaptiveSimpson => "adaptive-simpson",
        }
    }

    pub fn other(self) -> Self {
        match self {
            QuadratureRule::GaussLegendreComposite => QuadratureRule::AdaptiveSimpson,
            QuadratureRule::AdaptiveSimpson => QuadratureRule::GaussLegendreComposite,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub rule: QuadratureRule,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureConfig {
    pub fn new(rule: QuadratureRule, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::InvalidConfig("quadrature abs_tol must be > 0"));
        }
        if max_subdivisions == 0 {
            return Err(Error::InvalidConfig("max_subdivisions must be >= 1"));
        }
        Ok(QuadratureConfig { rule, abs_tol, max_subdivisions })
    }

    pub fn with_rule(self, rule: QuadratureRule) -> Self {
        QuadratureConfig { rule, ..self }
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { rule: QuadratureRule::GaussLegendreComposite, abs_tol: 1e-12, max_subdivisions: 1 << 16 }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_order` by Newton iteration from Tricomi's initial guesses.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        let n = order as f64;
        for i in 0..order {
            let mut x = math::cos(math::PI * (i as f64 + 0.75) / (n + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if math::abs(dx) < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(order, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = NeumaierSum::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        half * acc.total()
    }
}

fn legendre_with_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = order as f64;
    let d = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Compensated (Kahan-Babuska-Neumaier) running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if math::abs(self.sum) >= math::abs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

const GL_ORDER: usize = 20;

/// `∫_a^b f` with the configured rule.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    match cfg.rule {
        QuadratureRule::GaussLegendreComposite => gauss_composite(f, a, b, cfg),
        QuadratureRule::AdaptiveSimpson => adaptive_simpson(f, a, b, cfg),
    }
}

/// `∫_0^{r1} f(r) dr`. The measure factor `r` is part of `f`.
pub fn integrate_radial<F: FnMut(f64) -> f64>(f: F, r1: f64, cfg: &QuadratureConfig) -> Result<f64> {
    integrate(f, 0.0, r1, cfg)
}

/// Result of integrating with both rules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualEstimate {
    /// Value from the configured rule.
    pub value: f64,
    /// Value from the other rule.
    pub alternate: f64,
}

impl DualEstimate {
    pub fn spread(&self) -> f64 {
        math::abs(self.value - self.alternate)
    }
}

pub fn integrate_dual<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<DualEstimate> {
    let value = integrate(&mut f, a, b, cfg)?;
    let alternate = integrate(&mut f, a, b, &cfg.with_rule(cfg.rule.other()))?;
    Ok(DualEstimate { value, alternate })
}

fn gauss_composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let rule = GaussLegendre::new(GL_ORDER);
    let total = math::abs(b - a);
    let mut stack = Vec::with_capacity(64);
    stack.push((a, b, rule.integrate(&mut f, a, b)));
    let mut acc = NeumaierSum::default();
    let mut subdivisions = 0usize;
    while let Some((lo, hi, whole)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(&mut f, lo, mid);
        let right = rule.integrate(&mut f, mid, hi);
        let local_tol = cfg.abs_tol * math::abs(hi - lo) / total;
        if math::abs(left + right - whole) <= local_tol || mid == lo || mid == hi {
            acc.add(left);
            acc.add(right);
            continue;
        }
        subdivisions += 1;
        if subdivisions > cfg.max_subdivisions {
            return Err(Error::QuadratureNotConverged { a, b, subdivisions });
        }
        stack.push((mid, hi, right));
        stack.push((lo, mid, left));
    }
    Ok(acc.total())
}

struct SimpsonPanel {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_mid: f64,
    f_hi: f64,
    whole: f64,
}

fn adaptive_simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let total = math::abs(b - a);
    let simpson = |h: f64, fa: f64, fm: f64, fb: f64| h / 6.0 * (fa + 4.0 * fm + fb);
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let mut stack = Vec::with_capacity(64);
    stack.push(SimpsonPanel { lo: a, hi: b, f_lo: fa, f_mid: fm, f_hi: fb, whole: simpson(b - a, fa, fm, fb) });
    let mut acc = NeumaierSum::default();
    let mut subdivisions = 0usize;
    while let Some(p) = stack.pop() {
        let mid = 0.5 * (p.lo + p.hi);
        let f_left = f(0.5 * (p.lo + mid));
        let f_right = f(0.5 * (mid + p.hi));
        let left = simpson(mid - p.lo, p.f_lo, f_left, p.f_mid);
        let right = simpson(p.hi - mid, p.f_mid, f_right, p.f_hi);
        let delta = left + right - p.whole;
        let local_tol = cfg.abs_tol * math::abs(p.hi - p.lo) / total;
        if math::abs(delta) <= 15.0 * local_tol || mid == p.lo || mid == p.hi {
            acc.add(left);
            acc.add(right);
            acc.add(delta / 15.0);
            continue;
        }
        subdivisions += 1;
        if subdivisions > cfg.max_subdivisions {
            return Err(Error::QuadratureNotConverged { a, b, subdivisions });
        }
        stack.push(SimpsonPanel { lo: mid, hi: p.hi, f_lo: p.f_mid, f_mid: f_right, f_hi: p.f_hi, whole: right });
        stack.push(SimpsonPanel { lo: p.lo, hi: mid, f_lo: p.f_lo, f_mid: f_left, f_hi: p.f_mid, whole: left });
    }
    Ok(acc.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{bessel_j, first_positive_zero, BesselSeriesConfig};

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        for order in [1, 2, 5, 20, 40] {
            let rule = GaussLegendre::new(order);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "order {order}: {s}");
        }
    }

    #[test]
    fn gauss_legendre_exact_for_high_degree() {
        let rule = GaussLegendre::new(20);
        let v = rule.integrate(|x| x.powi(38), -1.0, 1.0);
        assert!((v - 2.0 / 39.0).abs() < 1e-15);
    }

    #[test]
    fn linear_and_zero() {
        for rule in [QuadratureRule::GaussLegendreComposite, QuadratureRule::AdaptiveSimpson] {
            let cfg = QuadratureConfig::default().with_rule(rule);
            let v = integrate_radial(|r| r, 1.0, &cfg).unwrap();
            assert!((v - 0.5).abs() < 1e-14);
            assert_eq!(integrate_radial(|_| 0.0, 3.0, &cfg).unwrap(), 0.0);
        }
    }

    #[test]
    fn dual_rule_agreement_on_bessel_square() {
        let alpha = first_positive_zero(0).unwrap();
        let bc = BesselSeriesConfig::default();
        let cfg = QuadratureConfig::default();
        let est = integrate_dual(|r| bessel_j(0, r, &bc).unwrap().powi(2) * r, 0.0, alpha, &cfg).unwrap();
        assert!(est.spread() < 1e-12, "spread {}", est.spread());
        // ∫_0^a J0² r dr = a²/2 J1(a)² when J0(a) = 0
        let j1 = bessel_j(1, alpha, &bc).unwrap();
        assert!((est.value - 0.5 * alpha * alpha * j1 * j1).abs() < 1e-13);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = QuadratureConfig::new(QuadratureRule::AdaptiveSimpson, 1e-14, 3).unwrap();
        let err = integrate(|x| (1.0 / (x + 1e-6)).sin(), 0.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::QuadratureNotConverged { .. }));
        assert!(QuadratureConfig::new(QuadratureRule::AdaptiveSimpson, 0.0, 3).is_err());
    }
}
