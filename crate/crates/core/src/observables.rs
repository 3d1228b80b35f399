//! Radial integrals and expectation values of the beam states.
//!
//! Closed forms are reduced to the two moments
//! `A = ∫_0^{κ r1} J_n(x)² x dx` and `B = ∫_0^{κ r1} J_{n+1}(x)² x dx`:
//! `I₁ = (A + B)/κ²`, `Δ_n = B/(A + B)`, `⟨L_z⟩ = n + Δ_n`,
//! `⟨S_z⟩ = 1/2 - Δ_n` and `⟨Σ·p⟩ = (k_z - i b (m/E) κ)(1 - 2Δ_n)`.
//! Independent values come from 3D quadrature of `ψ† O ψ` over the beam
//! volume with the operator applied numerically.

pub use crate::quadrature::{DualEstimate, QuadratureConfig, QuadratureRule};

use crate::beam::{BeamGeometry, BeamState, Branch, CutoffRule, CylPoint, ModeState, QuantumNumbers, Units};
use crate::bessel::bessel_j_real;
use crate::error::{Error, Result};
use crate::math;
use crate::operators::{apply_at, apply_full_fd_at, Operator};
use crate::quadrature::{integrate, integrate_dual, GaussLegendre};
use crate::C64;

/// `∫_0^{x1} J_order(x)² x dx` with both quadrature rules.
pub fn bessel_square_moment(order: i32, x1: f64, cfg: &QuadratureConfig) -> Result<DualEstimate> {
    integrate_dual(
        |x| {
            let j = bessel_j_real(order, x).unwrap_or(f64::NAN);
            j * j * x
        },
        0.0,
        x1,
        cfg,
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialMoments {
    pub jn_sq: DualEstimate,
    pub jn1_sq: DualEstimate,
    pub kappa: f64,
}

impl RadialMoments {
    pub fn compute(qn: &QuantumNumbers, geom: &BeamGeometry, cfg: &QuadratureConfig) -> Result<Self> {
        let x1 = qn.kappa * geom.r1;
        let jn_sq = bessel_square_moment(qn.n, x1, cfg)?;
        let jn1_sq = bessel_square_moment(qn.n + 1, x1, cfg)?;
        if !(jn_sq.value.is_finite() && jn1_sq.value.is_finite()) {
            return Err(Error::OrderOutOfRange(qn.n));
        }
        Ok(RadialMoments { jn_sq, jn1_sq, kappa: qn.kappa })
    }

    pub fn i1(&self) -> DualEstimate {
        let k2 = self.kappa * self.kappa;
        DualEstimate {
            value: (self.jn_sq.value + self.jn1_sq.value) / k2,
            alternate: (self.jn_sq.alternate + self.jn1_sq.alternate) / k2,
        }
    }

    pub fn delta_n(&self) -> DualEstimate {
        DualEstimate {
            value: self.jn1_sq.value / (self.jn_sq.value + self.jn1_sq.value),
            alternate: self.jn1_sq.alternate / (self.jn_sq.alternate + self.jn1_sq.alternate),
        }
    }

    /// Largest disagreement between the two rules over both moments.
    pub fn rule_spread(&self) -> f64 {
        self.jn_sq.spread().max(self.jn1_sq.spread())
    }
}

/// `I₁ = ∫_0^{r1} (J_n² + J_{n+1}²)(κr) r dr`.
pub fn compute_i1(qn: &QuantumNumbers, geom: &BeamGeometry, cfg: &QuadratureConfig) -> Result<DualEstimate> {
    let i1 = RadialMoments::compute(qn, geom, cfg)?.i1();
    if !(i1.value > 0.0) {
        return Err(Error::NonPositiveIntegral(i1.value));
    }
    Ok(i1)
}

/// `Δ_n = (1/I₁) ∫_0^{r1} J_{n+1}²(κr) r dr`.
pub fn compute_delta_n(qn: &QuantumNumbers, geom: &BeamGeometry, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(RadialMoments::compute(qn, geom, cfg)?.delta_n().value)
}

/// `(⟨L_z⟩, ⟨S_z⟩) = (n + Δ_n, 1/2 - Δ_n)`.
pub fn compute_angular_expectations(
    qn: &QuantumNumbers,
    geom: &BeamGeometry,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let delta = compute_delta_n(qn, geom, cfg)?;
    Ok(angular_from_delta(qn.n, delta))
}

fn angular_from_delta(n: i32, delta: f64) -> (f64, f64) {
    (n as f64 + delta, 0.5 - delta)
}

/// `(k_z - i b (m/E) κ)(1 - 2Δ_n)`.
pub fn helicity_closed_form(state: &BeamState, delta: f64) -> C64 {
    let kin = state.kin();
    let b = kin.branch.sign();
    C64::new(kin.k_z, -b * kin.gamma_inv * kin.p_kappa) * (1.0 - 2.0 * delta)
}

/// How the operator is applied inside a volume integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Application {
    /// Exact `∂_θ`, `∂_z`; radial stencil.
    ModeReduced,
    /// Every derivative by finite differences of the full spinor.
    FullDifference,
}

/// Volume quadrature nodes: uniform in `θ` (exact for the trigonometric
/// polynomials that appear), Gauss-Legendre in `z`, adaptive in `r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeConfig {
    pub theta_nodes: usize,
    pub z_nodes: usize,
    pub radial: QuadratureConfig,
}

impl Default for VolumeConfig {
    fn default() -> Self {
        VolumeConfig { theta_nodes: 8, z_nodes: 4, radial: QuadratureConfig::default() }
    }
}

/// `∫ f dV` over `θ ∈ [0, 2π)`, `z ∈ [-D/2, D/2]`, `r ∈ [0, r1]`.
pub fn volume_integral<F: FnMut(CylPoint) -> C64>(mut f: F, geom: &BeamGeometry, cfg: &VolumeConfig) -> Result<C64> {
    if cfg.theta_nodes == 0 || cfg.z_nodes == 0 {
        return Err(Error::InvalidConfig("volume quadrature needs at least one node per axis"));
    }
    let gl = GaussLegendre::new(cfg.z_nodes);
    let half = 0.5 * geom.length;
    let d_theta = math::TAU / cfg.theta_nodes as f64;
    let mut shell = |r: f64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..cfg.theta_nodes {
            let theta = i as f64 * d_theta;
            for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                acc += f(CylPoint::new(r, theta, half * x)) * (w * half);
            }
        }
        acc * (d_theta * r)
    };
    let re = integrate(|r| shell(r).re, 0.0, geom.r1, &cfg.radial)?;
    let im = integrate(|r| shell(r).im, 0.0, geom.r1, &cfg.radial)?;
    Ok(C64::new(re, im))
}

/// `∫ ψ†ψ dV`.
pub fn norm_by_quadrature<S: ModeState + ?Sized>(state: &S, geom: &BeamGeometry, cfg: &VolumeConfig) -> Result<f64> {
    let v = volume_integral(|p| C64::new(state.at(p).iter().map(|c| c.norm_sqr()).sum(), 0.0), geom, cfg)?;
    Ok(v.re)
}

/// Radial step of the pointwise stencils used in sandwiches.
pub fn sandwich_step(kappa: f64) -> f64 {
    1e-3 / kappa
}

/// `⟨ψ|O|ψ⟩ / ⟨ψ|ψ⟩`, both by volume quadrature.
pub fn sandwich<S: ModeState + ?Sized>(
    op: &Operator,
    state: &S,
    geom: &BeamGeometry,
    cfg: &VolumeConfig,
    application: Application,
    step: f64,
) -> Result<C64> {
    let value = volume_integral(
        |p| {
            let psi = state.at(p);
            let o = match application {
                Application::ModeReduced => apply_at(op, state, p, step),
                Application::FullDifference => apply_full_fd_at(op, state, p, step),
            };
            (0..4).map(|s| psi[s].conj() * o[s]).sum()
        },
        geom,
        cfg,
    )?;
    let norm = norm_by_quadrature(state, geom, cfg)?;
    Ok(value / norm)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HelicityExpectation {
    pub closed_form: C64,
    /// Volume quadrature of `ψ†(Σ·p)ψ`.
    pub grid_sandwich: C64,
    /// Volume quadrature of `ψ†Σ_z p_z ψ`.
    pub longitudinal: f64,
    /// `|closed_form - grid_sandwich|` relative to `|k_z - i (m/E) κ|`, the
    /// value the closed form would take with `Δ_n = 0`.
    pub difference: f64,
}

pub fn compute_helicity_expectation(state: &BeamState, cfg: &QuadratureConfig) -> Result<HelicityExpectation> {
    let moments = RadialMoments::compute(state.qn(), &state.geometry, cfg)?;
    let closed_form = helicity_closed_form(state, moments.delta_n().value);
    let vol = VolumeConfig { radial: *cfg, ..VolumeConfig::default() };
    let step = sandwich_step(state.qn().kappa);
    let grid_sandwich = sandwich(&Operator::helicity(), state, &state.geometry, &vol, Application::ModeReduced, step)?;
    let longitudinal =
        sandwich(&Operator::helicity_longitudinal(), state, &state.geometry, &vol, Application::ModeReduced, step)?.re;
    let kin = state.kin();
    let prefactor = C64::new(kin.k_z, kin.gamma_inv * kin.p_kappa).norm();
    let difference = (closed_form - grid_sandwich).norm() / prefactor;
    Ok(HelicityExpectation { closed_form, grid_sandwich, longitudinal, difference })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObservableReport {
    pub qn: QuantumNumbers,
    pub mass: f64,
    pub energy: f64,
    pub i1: f64,
    pub delta_n: f64,
    pub exp_lz: f64,
    pub exp_sz: f64,
    pub helicity: C64,
    /// Present when the volume-quadrature checks were requested.
    pub helicity_grid: Option<C64>,
    pub norm_check: Option<f64>,
    pub cutoff: CutoffRule,
    pub r1: f64,
    /// Largest two-rule disagreement among the radial moments.
    pub rule_spread: f64,
}

impl ObservableReport {
    pub fn compute(
        qn: QuantumNumbers,
        units: &Units,
        length: f64,
        rule: CutoffRule,
        cfg: &QuadratureConfig,
        volume_checks: bool,
    ) -> Result<Self> {
        let state = BeamState::new(qn, units, length, rule, cfg)?;
        let moments = RadialMoments::compute(&qn, &state.geometry, cfg)?;
        let delta_n = moments.delta_n().value;
        let (exp_lz, exp_sz) = angular_from_delta(qn.n, delta_n);
        let helicity = helicity_closed_form(&state, delta_n);
        let (helicity_grid, norm_check) = if volume_checks {
            let vol = VolumeConfig { radial: *cfg, ..VolumeConfig::default() };
            let h = compute_helicity_expectation(&state, cfg)?;
            (Some(h.grid_sandwich), Some(norm_by_quadrature(&state, &state.geometry, &vol)?))
        } else {
            (None, None)
        };
        Ok(ObservableReport {
            qn,
            mass: units.mass,
            energy: state.kin().energy,
            i1: state.i1,
            delta_n,
            exp_lz,
            exp_sz,
            helicity,
            helicity_grid,
            norm_check,
            cutoff: rule,
            r1: state.geometry.r1,
            rule_spread: moments.rule_spread(),
        })
    }

    pub fn branch(&self) -> Branch {
        self.qn.branch
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::first_positive_zero;

    fn qn(n: i32, kappa: f64, k_z: f64) -> QuantumNumbers {
        QuantumNumbers::new(n, kappa, k_z, Branch::Plus).unwrap()
    }

    #[test]
    fn i1_scaling_and_monotonicity() {
        let cfg = QuadratureConfig::default();
        let g1 = BeamGeometry::resolve(&qn(1, 1.0, 0.0), 1.0, CutoffRule::CommonAperture).unwrap();
        let g3 = BeamGeometry::resolve(&qn(1, 3.0, 0.0), 1.0, CutoffRule::CommonAperture).unwrap();
        let a = compute_i1(&qn(1, 1.0, 0.0), &g1, &cfg).unwrap().value;
        let b = compute_i1(&qn(1, 3.0, 0.0), &g3, &cfg).unwrap().value;
        assert!((b - a / 9.0).abs() < 1e-13);
        let mut last = 0.0;
        for i in 1..10 {
            let g = BeamGeometry::resolve(&qn(0, 1.0, 0.0), 1.0, CutoffRule::ExplicitRadius(0.5 * i as f64)).unwrap();
            let v = compute_i1(&qn(0, 1.0, 0.0), &g, &cfg).unwrap().value;
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn lommel_half_at_own_zero() {
        // ∫_0^{j} J_n² x dx = ∫_0^{j} J_{n+1}² x dx when J_n(j) = 0 (and likewise for J_{n+1})
        let cfg = QuadratureConfig::default();
        for n in 0..6 {
            for rule in [CutoffRule::FirstZeroOfJn, CutoffRule::FirstZeroOfJn1] {
                let q = qn(n, 1.3, 0.2);
                let g = BeamGeometry::resolve(&q, 1.0, rule).unwrap();
                let d = compute_delta_n(&q, &g, &cfg).unwrap();
                assert!((d - 0.5).abs() < 1e-11, "n={n} {rule:?}: {d}");
            }
        }
    }

    #[test]
    fn delta_zero_under_common_aperture() {
        // at x = j_{0,1}: ∫J0² x dx = ∫J1² x dx = j²J1(j)²/2
        let cfg = QuadratureConfig::default();
        let q = qn(0, 1.0, 0.0);
        let g = BeamGeometry::resolve(&q, 1.0, CutoffRule::CommonAperture).unwrap();
        assert!((g.r1 - first_positive_zero(0).unwrap()).abs() < 1e-15);
        assert!((compute_delta_n(&q, &g, &cfg).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn angular_sum_rule() {
        let cfg = QuadratureConfig::default();
        for n in -3..=10 {
            let q = qn(n, 0.8, 0.4);
            let g = BeamGeometry::resolve(&q, 1.0, CutoffRule::CommonAperture).unwrap();
            let (lz, sz) = compute_angular_expectations(&q, &g, &cfg).unwrap();
            assert!((lz + sz - (n as f64 + 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_is_one() {
        let cfg = QuadratureConfig::default();
        let vol = VolumeConfig::default();
        for (n, branch) in [(0, Branch::Plus), (2, Branch::Minus), (-2, Branch::Plus)] {
            let q = QuantumNumbers::new(n, 1.4, -0.7, branch).unwrap();
            let s = BeamState::new(q, &Units::default(), 3.0, CutoffRule::CommonAperture, &cfg).unwrap();
            let norm = norm_by_quadrature(&s, &s.geometry, &vol).unwrap();
            assert!((norm - 1.0).abs() < 1e-10, "{n} {branch:?}: {norm}");
        }
    }

    #[test]
    fn helicity_sandwich_matches_closed_form() {
        let cfg = QuadratureConfig::default();
        for branch in [Branch::Plus, Branch::Minus] {
            let q = QuantumNumbers::new(1, 1.0, 1.0, branch).unwrap();
            let s = BeamState::new(q, &Units::default(), 2.0, CutoffRule::CommonAperture, &cfg).unwrap();
            let h = compute_helicity_expectation(&s, &cfg).unwrap();
            assert!(h.difference < 1e-8, "{branch:?}: {:?}", h);
            assert!((h.grid_sandwich.re - h.longitudinal).abs() < 1e-8);
            assert!(h.closed_form.im * branch.sign() < 0.0);
        }
    }
}
