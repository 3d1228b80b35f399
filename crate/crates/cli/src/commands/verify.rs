use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};
use vortex_core::beam::{EigenMode, PlaneWaveMode, Superposition};
use vortex_core::fidelity::fidelity_report;
use vortex_core::operators::{
    apply_at, apply_cartesian_at, best_fit, refinement_sequence, relative_residual, residual_report, Action,
    CartesianForm, SpinorField, MIN_NODES,
};
use vortex_core::{
    BeamGeometry, CylPoint, KConvention, ModeState, Operator, QuantumNumbers, ResidualReport, Spacing, C64,
};

use super::{single_index, Outcome};
use crate::config::RunConfig;
use crate::error::{bad, Result};
use crate::output::{Cell, Report, Table};

pub const MODE_REDUCTION_TOL: f64 = 1e-12;
pub const K_SQUARED_TOL: f64 = 1e-6;
pub const COMMUTATOR_TOL: f64 = 1e-6;
pub const MIN_ORDER: f64 = 3.5;
pub const HELICITY_WITNESS_MIN: f64 = 0.01;
pub const ORBITAL_WITNESS_MIN: f64 = 0.1;
pub const PLANE_WAVE_TOL: f64 = 1e-12;
pub const CROSS_TOL: f64 = 1e-6;
pub const CROSS_POINTS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    /// Whether a failure makes the run fail.
    pub asserted: bool,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    pub order: Option<f64>,
    pub detail: String,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            asserted: true,
            passed: value < threshold,
            value,
            threshold,
            order: None,
            detail: String::new(),
        }
    }

    fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { passed: value > threshold, ..Check::below(name, value, threshold) }
    }

    fn informational(mut self) -> Self {
        self.asserted = false;
        self
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn order_ok(report: &ResidualReport) -> bool {
    report.order.is_none_or(|o| o >= MIN_ORDER)
}

fn order_check(name: &str, report: &ResidualReport) -> Check {
    let value = report.order.unwrap_or(f64::NAN);
    let detail = if report.order.is_none() { "all levels at the rounding floor" } else { "" };
    Check {
        name: name.to_string(),
        asserted: true,
        passed: order_ok(report),
        value,
        threshold: MIN_ORDER,
        order: report.order,
        detail: detail.to_string(),
    }
}

fn residual_json(r: &ResidualReport) -> Value {
    json!({
        "label": r.label,
        "convention": r.convention.map(|c| c.name()),
        "eigenvalue": { "re": r.eigenvalue.re, "im": r.eigenvalue.im },
        "levels": r.levels.iter().map(|l| json!({ "count": l.count, "h": l.h, "residual": l.residual })).collect::<Vec<_>>(),
        "order": r.order,
        "decreasing": r.decreasing(),
    })
}

/// Sample points spread over `0.05 r1 .. 0.95 r1`, all angles, `|z| <= 1`.
pub fn cross_points(r1: f64, count: usize) -> Vec<CylPoint> {
    (0..count)
        .map(|i| {
            let t = i as f64 + 0.5;
            let r = r1 * (0.05 + 0.9 * ((t * 0.618_033_988_749_895) % 1.0));
            let theta = std::f64::consts::TAU * ((t * 0.414_213_562_373_095) % 1.0);
            let z = -1.0 + 2.0 * ((t * 0.732_050_807_568_877) % 1.0);
            CylPoint::new(r, theta, z)
        })
        .collect()
}

/// Largest pointwise difference between the cylindrical and Cartesian
/// applications, relative to the largest Cartesian value.
pub fn cross_representation<S: ModeState + Sync>(
    op: &Operator,
    form: &CartesianForm,
    state: &S,
    points: &[CylPoint],
    step: f64,
) -> Result<f64> {
    let pairs = points
        .par_iter()
        .map(|&p| {
            let cyl = apply_at(op, state, p, step);
            let cart =
                apply_cartesian_at(form, state, [p.r * p.theta.cos(), p.r * p.theta.sin(), p.z], step, 0.5 * p.r)?;
            let diff = (0..4).map(|s| (cyl[s] - cart[s]).norm()).fold(0.0, f64::max);
            let scale = cart.iter().map(|c| c.norm()).fold(0.0, f64::max);
            Ok((diff, scale))
        })
        .collect::<vortex_core::Result<Vec<_>>>()?;
    let diff = pairs.iter().map(|p| p.0).fold(0.0, f64::max);
    let scale = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(diff / scale)
}

pub struct Verification {
    pub checks: Vec<Check>,
    pub residuals: Vec<ResidualReport>,
    pub passing_conventions: Vec<KConvention>,
}

type Job<'a> = Box<dyn Fn() -> Result<(Vec<Check>, Vec<ResidualReport>)> + Send + Sync + 'a>;

pub fn verify(cfg: &RunConfig) -> Result<Verification> {
    let n = single_index(cfg)?;
    let qn = QuantumNumbers::new(n, cfg.kappa, cfg.k_z, cfg.branch)?;
    let mode = EigenMode::new(qn, &cfg.units)?;
    let kin = mode.kin;
    let r1 = BeamGeometry::resolve(&qn, cfg.length, cfg.cutoff)?.r1;
    let shift = cfg.levels - 1;
    let coarsest = cfg.grid >> shift;
    if coarsest << shift != cfg.grid || coarsest < MIN_NODES {
        return Err(bad(format!(
            "grid {} cannot be halved {} times down to at least {MIN_NODES} nodes",
            cfg.grid, shift
        )));
    }
    let grids = refinement_sequence(Spacing::UniformOffset, r1, coarsest, cfg.levels)?;
    let finest = Arc::new(grids.last().cloned().expect("levels >= 2"));
    let b = cfg.branch.sign();
    let kappa = cfg.kappa;
    let h_op = Operator::hamiltonian(cfg.units.mass);
    let energy = kin.energy + cfg.eigenvalue_offset;
    let grids = &grids;
    let mode_ref = &mode;

    // K reports decide which convention the remaining checks use
    let k_reports = KConvention::ALL
        .par_iter()
        .map(|&conv| {
            let op = Operator::k_operator(conv);
            residual_report(
                &format!("k-operator/{}", conv.name()),
                Some(conv),
                Action::Single(&op),
                mode_ref,
                real(b * kappa),
                grids,
            )
        })
        .collect::<vortex_core::Result<Vec<_>>>()?;
    let passing: Vec<KConvention> =
        k_reports.iter().filter(|r| r.passes(cfg.tol) && order_ok(r)).filter_map(|r| r.convention).collect();
    let k_for_commutators = passing.first().copied().unwrap_or(KConvention::ConnectionOrder);

    let mut checks: Vec<Check> = Vec::new();
    for r in &k_reports {
        let mut c = Check::below(r.label.clone(), r.finest(), cfg.tol).informational();
        c.order = r.order;
        checks.push(c);
    }
    let names: Vec<&str> = passing.iter().map(|c| c.name()).collect();
    let best = k_reports.iter().map(ResidualReport::finest).fold(f64::INFINITY, f64::min);
    checks.push(Check {
        passed: !passing.is_empty(),
        ..Check::below("k-operator", best, cfg.tol).with_detail(if names.is_empty() {
            "no convention passed".to_string()
        } else {
            format!("passed: {}", names.join(" "))
        })
    });

    let finest_ref = &finest;
    let passing_ref = &passing;
    let mut jobs: Vec<Job<'_>> = Vec::new();
    jobs.push(Box::new(|| {
        let r = residual_report("hamiltonian", None, Action::Single(&h_op), mode_ref, real(energy), grids)?;
        let checks = vec![
            Check { order: r.order, ..Check::below("hamiltonian", r.finest(), cfg.tol) },
            order_check("hamiltonian-order", &r),
        ];
        Ok((checks, vec![r]))
    }));
    jobs.push(Box::new(|| {
        let op = Operator::momentum_z();
        let r = residual_report("momentum-z", None, Action::Single(&op), mode_ref, real(kin.k_z), grids)?;
        Ok((vec![Check::below("momentum-z", r.finest(), MODE_REDUCTION_TOL)], vec![r]))
    }));
    jobs.push(Box::new(|| {
        let op = Operator::total_jz();
        let r = residual_report("total-jz", None, Action::Single(&op), mode_ref, real(n as f64 + 0.5), grids)?;
        Ok((vec![Check::below("total-jz", r.finest(), MODE_REDUCTION_TOL)], vec![r]))
    }));
    jobs.push(Box::new(|| {
        let psi = SpinorField::sample(mode_ref, finest_ref);
        let mut out = Vec::new();
        for &conv in passing_ref {
            let op = Operator::k_operator(conv);
            let k_order = k_reports.iter().find(|r| r.convention == Some(conv)).expect("report per convention");
            out.push(order_check(&format!("k-operator-order/{}", conv.name()), k_order));
            let value = relative_residual(Action::Power(&op, 2), &psi, real(kappa * kappa));
            out.push(Check::below(format!("k-squared/{}", conv.name()), value, K_SQUARED_TOL));
        }
        Ok((out, Vec::new()))
    }));
    jobs.push(Box::new(|| {
        let other = EigenMode::new(QuantumNumbers { branch: cfg.branch.other(), ..qn }, &cfg.units)?;
        let mix = Superposition::new(*mode_ref, other, (C64::new(0.6, 0.1), C64::new(-0.3, 0.7)))?;
        let k = Operator::k_operator(k_for_commutators);
        let jz = Operator::total_jz();
        let pz = Operator::momentum_z();
        let pairs = [("k,h", &k, &h_op), ("jz,h", &jz, &h_op), ("k,jz", &k, &jz), ("pz,h", &pz, &h_op)];
        let fields = [
            ("eigenstate", SpinorField::sample(mode_ref, finest_ref)),
            ("superposition", SpinorField::sample(&mix, finest_ref)),
        ];
        let mut out = Vec::new();
        for (label, psi) in &fields {
            for (name, x, y) in pairs {
                let value = relative_residual(Action::Commutator(x, y), psi, real(0.0));
                out.push(
                    Check::below(format!("commutator[{name}]/{label}"), value, COMMUTATOR_TOL)
                        .with_detail(format!("k convention: {}", k_for_commutators.name())),
                );
            }
        }
        Ok((out, Vec::new()))
    }));
    jobs.push(Box::new(|| {
        let (fit, value) = best_fit(Action::Single(&Operator::helicity()), mode_ref, finest_ref);
        let helicity = Check::above("helicity-witness", value, HELICITY_WITNESS_MIN)
            .with_detail(format!("best-fit eigenvalue {:.6e}{:+.6e}i", fit.re, fit.im));
        let (fit, value) = best_fit(Action::Single(&Operator::orbital_z()), mode_ref, finest_ref);
        let orbital = Check::above("orbital-witness", value, ORBITAL_WITNESS_MIN)
            .with_detail(format!("best-fit eigenvalue {:.6e}{:+.6e}i", fit.re, fit.im));
        Ok((vec![helicity, orbital], Vec::new()))
    }));
    jobs.push(Box::new(|| {
        let mut out = Vec::new();
        for spin_up in [true, false] {
            let pw = PlaneWaveMode { k_z: cfg.k_z, mass: cfg.units.mass, spin_up };
            let psi = SpinorField::sample(&pw, finest_ref);
            let label = if spin_up { "up" } else { "down" };
            let hel = relative_residual(Action::Single(&Operator::helicity()), &psi, real(pw.helicity()));
            let ham = relative_residual(Action::Single(&h_op), &psi, real(pw.energy()));
            out.push(Check::below(format!("plane-wave-control/{label}"), hel.max(ham), PLANE_WAVE_TOL));
        }
        Ok((out, Vec::new()))
    }));
    jobs.push(Box::new(|| {
        let points = cross_points(r1, CROSS_POINTS);
        let step = 1e-3 / kappa.max(cfg.k_z.abs()).max(1.0);
        let mut out = Vec::new();
        let mut cases = vec![
            ("hamiltonian", h_op.clone(), CartesianForm::hamiltonian(cfg.units.mass)),
            ("helicity", Operator::helicity(), CartesianForm::helicity()),
        ];
        for &conv in passing_ref {
            if let Some(form) = CartesianForm::k_operator(conv) {
                cases.push(("k-operator", Operator::k_operator(conv), form));
            }
        }
        for (name, op, form) in &cases {
            let value = cross_representation(op, form, mode_ref, &points, step)?;
            out.push(Check::below(format!("cylindrical-vs-cartesian/{name}"), value, CROSS_TOL));
        }
        Ok((out, Vec::new()))
    }));
    jobs.push(Box::new(|| {
        let entries = fidelity_report(&qn, &cfg.units, finest_ref)?;
        let out = entries
            .into_iter()
            .map(|e| {
                Check::below(
                    format!("fidelity/{}", e.name),
                    e.relative_residual,
                    vortex_core::fidelity::CONSISTENCY_TOL,
                )
                .informational()
                .with_detail(if e.consistent { "consistent" } else { "printed form not satisfied" })
            })
            .collect();
        Ok((out, Vec::new()))
    }));

    let results = jobs.par_iter().map(|job| job()).collect::<Result<Vec<_>>>()?;
    drop(jobs);
    let mut residuals = Vec::new();
    // hamiltonian first, then the K reports, then the rest
    let mut ordered = Vec::new();
    for (i, (c, r)) in results.into_iter().enumerate() {
        if i == 0 {
            ordered.extend(c);
            residuals.extend(r);
            ordered.append(&mut checks);
            residuals.extend(k_reports.iter().cloned());
        } else {
            ordered.extend(c);
            residuals.extend(r);
        }
    }
    Ok(Verification { checks: ordered, residuals, passing_conventions: passing })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let v = verify(cfg)?;
    let mut table = Table::new(&["check", "asserted", "passed", "value", "threshold", "order", "detail"]);
    for c in &v.checks {
        table.push(vec![
            c.name.clone().into(),
            c.asserted.into(),
            c.passed.into(),
            c.value.into(),
            c.threshold.into(),
            c.order.into(),
            Cell::Text(c.detail.clone()),
        ]);
    }
    let failures: Vec<String> = v.checks.iter().filter(|c| c.asserted && !c.passed).map(|c| c.name.clone()).collect();
    let mut report = Report::new(cfg, table);
    let names: Vec<&str> = v.passing_conventions.iter().map(|c| c.name()).collect();
    report.note("k conventions passed", if names.is_empty() { "none".to_string() } else { names.join(" ") });
    report.note(
        "status",
        if failures.is_empty() { "pass".to_string() } else { format!("fail: {}", failures.join(", ")) },
    );
    report.extra.push(("residual_reports", Value::Array(v.residuals.iter().map(residual_json).collect())));
    Ok(Outcome { report, failures })
}
