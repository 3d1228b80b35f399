use proptest::prelude::*;
use vortex_core::beam::{derive_kinematics, evaluate_spinor, evaluate_unnormalized_general, EigenMode};
use vortex_core::{
    bessel_j, first_positive_zero, BeamState, Branch, CutoffRule, CylPoint, Error, ModeState, QuadratureConfig,
    QuantumNumbers, Units, C64,
};

fn qn(n: i32, kappa: f64, k_z: f64, branch: Branch) -> QuantumNumbers {
    QuantumNumbers::new(n, kappa, k_z, branch).unwrap()
}

fn state(q: QuantumNumbers, length: f64) -> BeamState {
    BeamState::new(q, &Units::default(), length, CutoffRule::default(), &QuadratureConfig::default()).unwrap()
}

fn j(n: i32, x: f64) -> f64 {
    bessel_j(n, x, &Default::default()).unwrap()
}

/// Composite Simpson over `r`, uniform nodes in `θ` and midpoints in `z`.
fn norm_oracle(s: &BeamState) -> f64 {
    let (r1, d) = (s.geometry.r1, s.geometry.length);
    let (nr, nt, nz) = (4000, 6, 3);
    let h = r1 / nr as f64;
    let mut total = 0.0;
    for i in 0..=nr {
        let r = i as f64 * h;
        let w = if i == 0 || i == nr {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let mut shell = 0.0;
        for a in 0..nt {
            for b in 0..nz {
                let p = CylPoint::new(
                    r,
                    std::f64::consts::TAU * a as f64 / nt as f64,
                    -0.5 * d + d * (b as f64 + 0.5) / nz as f64,
                );
                shell += s.sample(p).density();
            }
        }
        total += w * r * shell * std::f64::consts::TAU / nt as f64 * d / nz as f64;
    }
    total * h / 3.0
}

/// Midpoint sum with 10⁶ panels.
fn i1_oracle(n: i32, kappa: f64, r1: f64) -> f64 {
    let panels = 1_000_000;
    let h = r1 / panels as f64;
    (0..panels)
        .map(|i| {
            let r = (i as f64 + 0.5) * h;
            (j(n, kappa * r).powi(2) + j(n + 1, kappa * r).powi(2)) * r
        })
        .sum::<f64>()
        * h
}

#[test]
fn kinematics_examples() {
    let u = Units::default();
    let k = derive_kinematics(&qn(1, 3.0, 4.0, Branch::Plus), &u).unwrap();
    assert!((k.energy - 26f64.sqrt()).abs() < 1e-15);
    let want = (26f64.sqrt() - 1.0) / (26f64.sqrt() + 1.0);
    assert!((k.c_ratio.norm_sqr() - want).abs() < 1e-12 * want);
    let k = derive_kinematics(&qn(0, 1.0, 0.0, Branch::Plus), &u).unwrap();
    assert!((k.lambda - C64::new(0.0, 1.0 / (2f64.sqrt() - 1.0))).norm() < 1e-14);
    let k = derive_kinematics(&qn(0, 1.0, 0.7, Branch::Minus), &u).unwrap();
    assert!((k.lambda - C64::new(0.7, -1.0) / (k.energy - 1.0)).norm() < 1e-14);
    assert!((k.gamma_inv - 1.0 / k.energy).abs() < 1e-16);
}

#[test]
fn invalid_inputs() {
    assert!(QuantumNumbers::new(0, 0.0, 1.0, Branch::Plus).is_err());
    assert!(QuantumNumbers::new(0, -1.0, 1.0, Branch::Plus).is_err());
    assert!(QuantumNumbers::new(0, 1.0, f64::NAN, Branch::Plus).is_err());
    assert!(Units::natural(0.0).is_err());
    let q = qn(1, 1.0, 0.0, Branch::Plus);
    let k = derive_kinematics(&q, &Units::default()).unwrap();
    let p = CylPoint::new(0.5, 0.0, 0.0);
    assert!(matches!(evaluate_unnormalized_general(&q, &k, C64::new(0.0, 0.0), p), Err(Error::ZeroLambda)));
}

#[test]
fn norm_constant_against_oracle() {
    let q = qn(0, 1.0, 0.0, Branch::Plus);
    let s = state(q, 10.0);
    let r1 = first_positive_zero(0).unwrap();
    assert!((s.geometry.r1 - r1).abs() < 1e-15);
    let e = 2f64.sqrt();
    let n_oracle = ((e + 1.0) / (4.0 * std::f64::consts::PI * e * 10.0 * i1_oracle(0, 1.0, r1))).sqrt();
    assert!((s.norm - n_oracle).abs() < 1e-10 * n_oracle, "{} {}", s.norm, n_oracle);
}

#[test]
fn doubling_length_halves_norm_squared() {
    for branch in [Branch::Plus, Branch::Minus] {
        let q = qn(2, 1.4, -0.3, branch);
        let a = state(q, 4.0).norm.powi(2);
        let b = state(q, 8.0).norm.powi(2);
        assert!((b / a - 0.5).abs() < 1e-14);
    }
}

#[test]
fn origin_and_periodicity() {
    let s = state(qn(0, 1.0, 1.0, Branch::Plus), 1.0);
    let psi = s.sample(CylPoint::new(0.0, 0.0, 0.0)).psi;
    assert!(psi[1].norm() == 0.0 && psi[3].norm() == 0.0);
    assert!((psi[2] / psi[0] - s.kin().c_ratio).norm() < 1e-15);
    let s = state(qn(2, 1.0, 1.0, Branch::Minus), 1.0);
    assert!(s.sample(CylPoint::new(0.0, 0.3, 0.1)).psi.iter().all(|c| c.norm() == 0.0));
    for theta in [0.0, 0.9, 2.5, 5.0] {
        let a = s.sample(CylPoint::new(0.7, theta, 0.2)).psi;
        let b = s.sample(CylPoint::new(0.7, theta + std::f64::consts::TAU, 0.2)).psi;
        for c in 0..4 {
            assert!((a[c] - b[c]).norm() < 1e-14);
        }
    }
}

#[test]
fn structural_ratios_and_branch_swap() {
    let q = qn(3, 2.0, 0.8, Branch::Plus);
    let plus = EigenMode::new(q, &Units::default()).unwrap();
    let minus = EigenMode::new(QuantumNumbers { branch: Branch::Minus, ..q }, &Units::default()).unwrap();
    let c = plus.kin.c_ratio;
    for i in 1..40 {
        let p = CylPoint::new(0.03 * i as f64, 0.17 * i as f64, -0.1 * i as f64);
        let a = evaluate_spinor(&plus, 1.0, p).psi;
        let b = evaluate_spinor(&minus, 1.0, p).psi;
        assert!((a[2] - c * a[0]).norm() < 1e-14);
        assert!((a[3] + c * a[1]).norm() < 1e-14);
        let ratio = (j(4, 2.0 * p.r) / j(3, 2.0 * p.r)).abs();
        assert!(((a[1] / a[0]).norm() - ratio).abs() < 1e-12 * ratio.max(1.0));
        // the minus branch carries its factor on the upper pair
        let l = minus.kin.lambda;
        assert!((b[0] - l * b[2]).norm() < 1e-14);
        assert!((b[1] + l * b[3]).norm() < 1e-14);
    }
}

#[test]
fn free_lambda_form_is_proportional() {
    let units = Units::default();
    for branch in [Branch::Plus, Branch::Minus] {
        let q = qn(1, 1.2, -0.4, branch);
        let mode = EigenMode::new(q, &units).unwrap();
        let mut worst = 0.0_f64;
        for i in 0..100 {
            let t = i as f64 + 0.5;
            let p = CylPoint::new(0.05 + (t * 0.618) % 2.0, (t * 2.39) % std::f64::consts::TAU, (t * 0.77) % 3.0 - 1.5);
            let g = evaluate_unnormalized_general(&q, &mode.kin, mode.kin.lambda, p).unwrap().psi;
            let e = mode.at(p);
            assert!((g[2] - g[0] / mode.kin.lambda).norm() < 1e-14);
            let ratios: Vec<C64> = (0..4).map(|s| g[s] / e[s]).collect();
            for r in &ratios {
                worst = worst.max((r - ratios[0]).norm() / ratios[0].norm());
            }
        }
        assert!(worst < 1e-10, "{branch:?} {worst:e}");
    }
    let q = qn(2, 1.0, 0.5, Branch::Plus);
    let k = derive_kinematics(&q, &units).unwrap();
    let zero = evaluate_unnormalized_general(&q, &k, C64::new(0.3, 1.1), CylPoint::new(0.0, 0.0, 0.0)).unwrap();
    assert!(zero.psi.iter().all(|c| c.norm() == 0.0));
}

#[test]
fn negative_n_uses_reflected_orders() {
    let s = EigenMode::new(qn(-3, 1.0, 0.5, Branch::Plus), &Units::default()).unwrap();
    let r = 1.3;
    let radial = s.radial(r);
    assert!((radial[0].re - j(-3, r)).abs() < 1e-15 && (radial[0].re + j(3, r)).abs() < 1e-15);
    assert!((radial[1].re - j(2, r)).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn unit_norm_by_volume_quadrature(
        n in -3..10i32,
        kappa in 0.3..5.0f64,
        k_z in -5.0..5.0f64,
        plus in any::<bool>(),
        length in 0.5..20.0f64,
    ) {
        let branch = if plus { Branch::Plus } else { Branch::Minus };
        let s = state(qn(n, kappa, k_z, branch), length);
        let norm = norm_oracle(&s);
        prop_assert!((norm - 1.0).abs() < 1e-8, "norm {}", norm);
    }
}
