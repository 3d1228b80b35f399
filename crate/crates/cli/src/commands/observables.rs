use rayon::prelude::*;
use vortex_core::{ObservableReport, QuadratureConfig, QuantumNumbers};

use super::Outcome;
use crate::config::{cutoff_text, RunConfig};
use crate::error::Result;
use crate::output::{Report, Table};

pub const SUM_RULE_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-8;

const COLUMNS: [&str; 15] = [
    "n",
    "kappa",
    "k_z",
    "branch",
    "I1",
    "delta_n",
    "Lz",
    "Sz",
    "Re_hel",
    "Im_hel",
    "norm",
    "cutoff_rule",
    "r1",
    "Re_hel_grid",
    "Im_hel_grid",
];

pub fn compute(cfg: &RunConfig) -> Result<Vec<ObservableReport>> {
    let quad = QuadratureConfig::default();
    cfg.indices
        .values()
        .par_iter()
        .map(|&n| {
            let qn = QuantumNumbers::new(n, cfg.kappa, cfg.k_z, cfg.branch)?;
            Ok(ObservableReport::compute(qn, &cfg.units, cfg.length, cfg.cutoff, &quad, true)?)
        })
        .collect()
}

fn trend(deltas: &[f64]) -> &'static str {
    if deltas.len() < 2 {
        "single row"
    } else if deltas.windows(2).all(|w| w[1] < w[0]) {
        "strictly decreasing"
    } else if deltas.windows(2).all(|w| w[1] > w[0]) {
        "strictly increasing"
    } else {
        "not monotone"
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let reports = compute(cfg)?;
    let quad = QuadratureConfig::default();
    let mut table = Table::new(&COLUMNS);
    let mut failures = Vec::new();
    for r in &reports {
        let n = r.qn.n;
        let grid = r.helicity_grid;
        table.push(vec![
            n.into(),
            r.qn.kappa.into(),
            r.qn.k_z.into(),
            r.branch().symbol().into(),
            r.i1.into(),
            r.delta_n.into(),
            r.exp_lz.into(),
            r.exp_sz.into(),
            r.helicity.re.into(),
            r.helicity.im.into(),
            r.norm_check.into(),
            cutoff_text(&r.cutoff).into(),
            r.r1.into(),
            grid.map(|h| h.re).into(),
            grid.map(|h| h.im).into(),
        ]);
        if !((r.exp_lz + r.exp_sz - (n as f64 + 0.5)).abs() < SUM_RULE_TOL) {
            failures.push(format!("sum-rule n={n}"));
        }
        if !(r.delta_n > 0.0 && r.delta_n < 1.0) {
            failures.push(format!("delta-range n={n}"));
        }
        if !r.norm_check.is_some_and(|x| (x - 1.0).abs() < NORM_TOL) {
            failures.push(format!("norm n={n}"));
        }
        if !(r.rule_spread < 10.0 * quad.abs_tol) {
            failures.push(format!("quadrature-agreement n={n}"));
        }
    }
    let deltas: Vec<f64> = reports.iter().map(|r| r.delta_n).collect();
    let mut report = Report::new(cfg, table);
    report.note("delta_n trend", trend(&deltas));
    let spread = reports.iter().map(|r| r.rule_spread).fold(0.0, f64::max);
    report.note("max quadrature rule spread", format!("{spread:.3e}"));
    Ok(Outcome { report, failures })
}
