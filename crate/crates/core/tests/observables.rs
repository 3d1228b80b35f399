use vortex_core::observables::{
    compute_angular_expectations, compute_delta_n, compute_helicity_expectation, compute_i1, sandwich, sandwich_step,
    Application, VolumeConfig,
};
use vortex_core::quadrature::{integrate_dual, integrate_radial};
use vortex_core::{
    bessel_j, first_positive_zero, BeamGeometry, BeamState, Branch, CutoffRule, ObservableReport, Operator,
    QuadratureConfig, QuadratureRule, QuantumNumbers, Units,
};

/// Spin-orbit strengths for n = 0..10 with the cutoff at the first zero of
/// `J_0`, frozen from the midpoint oracle below.
const DELTA_FROZEN: [f64; 11] = [
    0.500000000000,
    0.235672523161,
    0.122918212555,
    0.073998295722,
    0.049198194275,
    0.035026045628,
    0.026194577974,
    0.020326441620,
    0.016231101929,
    0.013260333315,
    0.011037065656,
];

fn qn(n: i32, kappa: f64, k_z: f64, branch: Branch) -> QuantumNumbers {
    QuantumNumbers::new(n, kappa, k_z, branch).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn geometry(q: &QuantumNumbers, rule: CutoffRule) -> BeamGeometry {
    BeamGeometry::resolve(q, 1.0, rule).unwrap()
}

fn j(n: i32, x: f64) -> f64 {
    bessel_j(n, x, &Default::default()).unwrap()
}

/// Plain f64 power series, adequate for the small arguments of the oracle.
fn series_j(n: u32, x: f64) -> f64 {
    let mut term = (1..=n).fold(1.0, |acc, k| acc * x / (2.0 * k as f64));
    let mut sum = 0.0;
    for m in 1..40 {
        sum += term;
        term *= -(x * x / 4.0) / (m as f64 * (m + n) as f64);
    }
    sum
}

/// Midpoint sums of `J_n² x` and `J_{n+1}² x` on `[0, x1]` with 10⁶ panels.
fn riemann_moments(n: u32, x1: f64) -> (f64, f64) {
    let panels = 1_000_000;
    let h = x1 / panels as f64;
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..panels {
        let x = (i as f64 + 0.5) * h;
        a += series_j(n, x).powi(2) * x;
        b += series_j(n + 1, x).powi(2) * x;
    }
    (a * h, b * h)
}

#[test]
fn radial_integration_examples() {
    assert!((integrate_radial(|r| r, 1.0, &cfg()).unwrap() - 0.5).abs() < 1e-14);
    assert_eq!(integrate_radial(|_| 0.0, 1.0, &cfg()).unwrap(), 0.0);
    let z = first_positive_zero(0).unwrap();
    let dual = integrate_dual(|r| j(0, r).powi(2) * r, 0.0, z, &cfg()).unwrap();
    assert!(dual.spread() < 1e-12);
    // ∫₀^{j} J₀² r dr = j² J₁(j)² / 2
    assert!((dual.value - 0.5 * z * z * j(1, z).powi(2)).abs() < 1e-13);
    let simpson = cfg().with_rule(QuadratureRule::AdaptiveSimpson);
    assert!((integrate_radial(|r| j(0, r).powi(2) * r, z, &simpson).unwrap() - dual.value).abs() < 1e-12);
}

#[test]
fn i1_against_riemann_oracle() {
    let q = qn(0, 1.0, 0.5, Branch::Plus);
    let g = geometry(&q, CutoffRule::FirstZeroOfJn);
    let (a, b) = riemann_moments(0, g.r1);
    let i1 = compute_i1(&q, &g, &cfg()).unwrap().value;
    assert!((i1 - (a + b)).abs() < 1e-8 * i1);
}

#[test]
fn i1_scaling_and_monotonicity() {
    let base = qn(3, 1.0, 0.2, Branch::Plus);
    let i_base = compute_i1(&base, &geometry(&base, CutoffRule::default()), &cfg()).unwrap().value;
    for kappa in [0.5, 2.0, 7.0] {
        let q = qn(3, kappa, 0.2, Branch::Plus);
        let i = compute_i1(&q, &geometry(&q, CutoffRule::default()), &cfg()).unwrap().value;
        assert!((i * kappa * kappa - i_base).abs() < 1e-12 * i_base);
    }
    let mut last = 0.0;
    for r in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let i = compute_i1(&base, &geometry(&base, CutoffRule::ExplicitRadius(r)), &cfg()).unwrap().value;
        assert!(i > last);
        last = i;
    }
}

#[test]
fn delta_frozen_values() {
    let x1 = first_positive_zero(0).unwrap();
    let mut last = 1.0;
    for (n, frozen) in DELTA_FROZEN.iter().enumerate() {
        let (a, b) = riemann_moments(n as u32, x1);
        let n = n as i32;
        let oracle = b / (a + b);
        assert!((oracle - frozen).abs() < 1e-8, "oracle n={n}: {oracle:.12}");
        let q = qn(n, 1.0, 0.5, Branch::Plus);
        let delta = compute_delta_n(&q, &geometry(&q, CutoffRule::default()), &cfg()).unwrap();
        assert!((delta - frozen).abs() < 1e-8, "n={n}: {delta:.12}");
        assert!(delta > 0.0 && delta < 1.0 && delta < last);
        last = delta;
    }
}

#[test]
fn delta_is_kappa_invariant() {
    for rule in [CutoffRule::default(), CutoffRule::FirstZeroOfJn, CutoffRule::FirstZeroOfJn1] {
        for n in 0..=10 {
            let a = qn(n, 0.5, 1.0, Branch::Plus);
            let b = qn(n, 7.0, -2.0, Branch::Minus);
            let da = compute_delta_n(&a, &geometry(&a, rule), &cfg()).unwrap();
            let db = compute_delta_n(&b, &geometry(&b, rule), &cfg()).unwrap();
            assert!((da - db).abs() < 1e-10, "{rule:?} n={n}");
        }
    }
}

#[test]
fn zero_of_either_bessel_gives_one_half() {
    for n in 0..=10 {
        for rule in [CutoffRule::FirstZeroOfJn, CutoffRule::FirstZeroOfJn1] {
            let q = qn(n, 1.3, 0.0, Branch::Plus);
            let d = compute_delta_n(&q, &geometry(&q, rule), &cfg()).unwrap();
            assert!((d - 0.5).abs() < 1e-12, "{rule:?} n={n}: {d}");
        }
    }
}

#[test]
fn angular_sum_rule() {
    for n in -3..=10 {
        for rule in [CutoffRule::default(), CutoffRule::ExplicitRadius(3.3)] {
            let q = qn(n, 1.1, 0.4, Branch::Plus);
            let (lz, sz) = compute_angular_expectations(&q, &geometry(&q, rule), &cfg()).unwrap();
            assert!((lz + sz - (n as f64 + 0.5)).abs() < 1e-12);
        }
    }
}

#[test]
fn angular_expectations_by_operator_sandwich() {
    let vol = VolumeConfig::default();
    for (n, branch) in [(0, Branch::Plus), (2, Branch::Minus), (-2, Branch::Plus)] {
        let q = qn(n, 1.5, 0.7, branch);
        let s = BeamState::new(q, &Units::default(), 3.0, CutoffRule::default(), &cfg()).unwrap();
        let (lz, sz) = compute_angular_expectations(&q, &s.geometry, &cfg()).unwrap();
        let step = sandwich_step(q.kappa);
        let lz_grid = sandwich(&Operator::orbital_z(), &s, &s.geometry, &vol, Application::ModeReduced, step).unwrap();
        let sz_grid = sandwich(&Operator::spin_z(), &s, &s.geometry, &vol, Application::ModeReduced, step).unwrap();
        assert!((lz_grid.re - lz).abs() < 1e-7 && lz_grid.im.abs() < 1e-7, "n={n}");
        assert!((sz_grid.re - sz).abs() < 1e-7 && sz_grid.im.abs() < 1e-7, "n={n}");
    }
}

#[test]
fn helicity_expectation_parts() {
    let cases = [
        (0, Branch::Plus, CutoffRule::default()),
        (0, Branch::Minus, CutoffRule::ExplicitRadius(1.5)),
        (1, Branch::Minus, CutoffRule::default()),
        (4, Branch::Plus, CutoffRule::default()),
    ];
    for (n, branch, rule) in cases {
        let q = qn(n, 1.0, 1.0, branch);
        let s = BeamState::new(q, &Units::default(), 2.0, rule, &cfg()).unwrap();
        let h = compute_helicity_expectation(&s, &cfg()).unwrap();
        assert!((h.grid_sandwich.re - h.longitudinal).abs() < 1e-7, "n={n}");
        assert!(h.difference < 1e-6, "n={n}: {:e}", h.difference);
        if n > 0 || rule != CutoffRule::default() {
            assert!(h.closed_form.im * branch.sign() < 0.0);
        }
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = points.iter().map(|(x, y)| (x.ln() - mx) * (y.ln() - my)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x.ln() - mx).powi(2)).sum();
    num / den
}

#[test]
fn transverse_part_falls_as_inverse_gamma() {
    let q = qn(1, 1.0, 2.0, Branch::Plus);
    let mut closed = Vec::new();
    let mut grid = Vec::new();
    for mass in [1.0, 0.5, 0.2, 0.1, 0.05, 0.02] {
        let units = Units::natural(mass).unwrap();
        let s = BeamState::new(q, &units, 1.0, CutoffRule::default(), &cfg()).unwrap();
        let gamma = s.kin().energy / mass;
        let h = compute_helicity_expectation(&s, &cfg()).unwrap();
        closed.push((gamma, -h.closed_form.im));
        grid.push((gamma, -h.grid_sandwich.im));
    }
    assert!((slope(&closed) + 1.0).abs() < 0.01);
    assert!((slope(&grid) + 1.0).abs() < 0.01);
    let last = closed.last().unwrap().1;
    assert!(last < closed[0].1 / 10.0);
}

#[test]
fn reports_satisfy_their_invariants() {
    for n in -3..=10 {
        let q = qn(n, 2.0, -1.0, if n % 2 == 0 { Branch::Plus } else { Branch::Minus });
        let r = ObservableReport::compute(q, &Units::default(), 1.0, CutoffRule::default(), &cfg(), n == 1).unwrap();
        assert!((r.exp_lz + r.exp_sz - (n as f64 + 0.5)).abs() < 1e-10);
        assert!(r.delta_n > 0.0 && r.delta_n < 1.0);
        assert_eq!(r.exp_lz, n as f64 + r.delta_n);
        assert_eq!(r.exp_sz, 0.5 - r.delta_n);
        assert!(r.rule_spread < 10.0 * cfg().abs_tol);
        if let Some(norm) = r.norm_check {
            assert!((norm - 1.0).abs() < 1e-8);
        }
    }
}
