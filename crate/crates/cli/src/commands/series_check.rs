use rayon::prelude::*;
use vortex_core::beam::derive_kinematics;
use vortex_core::series::{closed_form_c2m, run_recurrence, verify_bessel_identification, SeedPair};
use vortex_core::{Error, QuantumNumbers, RadialSeries};

use super::Outcome;
use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{Cell, Report, Table};

pub const IDENTIFICATION_TOL: f64 = 1e-10;
pub const RESUBSTITUTION_TOL: f64 = 1e-13;
pub const CLOSED_FORM_TOL: f64 = 1e-12;
/// Highest `m` compared against the closed form.
pub const CLOSED_FORM_MAX_M: u32 = 15;

const COLUMNS: [&str; 9] = [
    "n",
    "alpha",
    "seed",
    "terms",
    "identification_max_error",
    "resubstitution_residual",
    "parity_violations",
    "ratio_deviation",
    "closed_form_max_deviation",
];

struct Row {
    n: i32,
    series: RadialSeries,
    identification: Option<f64>,
    closed_form: Option<f64>,
}

fn closed_form_deviation(series: &RadialSeries) -> Result<Option<f64>> {
    if series.n < 0 {
        return Ok(None);
    }
    let top = CLOSED_FORM_MAX_M.min((series.terms() / 2) as u32);
    let mut worst = 0.0_f64;
    for m in 0..=top {
        let want = series.coefficient(0, 2 * m as usize);
        let got = closed_form_c2m(series.n, m, series.kappa, Some(series.c0))?;
        worst = worst.max((got - want).norm() / want.norm());
    }
    Ok(Some(worst))
}

fn build(cfg: &RunConfig, n: i32) -> Result<Row> {
    let qn = QuantumNumbers::new(n, cfg.kappa, cfg.k_z, cfg.branch)?;
    let kin = derive_kinematics(&qn, &cfg.units)?;
    let series = run_recurrence(n, &kin, kin.lambda, cfg.terms)?;
    let identification = match verify_bessel_identification(n, &kin, cfg.terms) {
        Ok(e) => Some(e),
        Err(Error::SeriesRange { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let closed_form = closed_form_deviation(&series)?;
    Ok(Row { n, series, identification, closed_form })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let built = cfg.indices.values().par_iter().map(|&n| build(cfg, n)).collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&COLUMNS);
    let mut failures = Vec::new();
    for row in &built {
        let s = &row.series;
        let seed = match s.seed {
            SeedPair::UpperFirst => "upper",
            SeedPair::LowerFirst => "lower",
        };
        let resub = s.resubstitution_residual();
        let parity = s.parity_violations();
        table.push(vec![
            row.n.into(),
            s.alpha.into(),
            seed.into(),
            s.terms().into(),
            row.identification.into(),
            resub.into(),
            parity.into(),
            s.ratio_deviation().into(),
            row.closed_form.into(),
        ]);
        let n = row.n;
        match row.identification {
            Some(e) if e < IDENTIFICATION_TOL => {}
            Some(_) => failures.push(format!("identification n={n}")),
            None => failures.push(format!("identification n={n} (series not certified up to kr = 20)")),
        }
        if !(resub < RESUBSTITUTION_TOL) {
            failures.push(format!("resubstitution n={n}"));
        }
        if parity != 0 {
            failures.push(format!("parity n={n}"));
        }
        if row.closed_form.is_some_and(|d| !(d < CLOSED_FORM_TOL)) {
            failures.push(format!("closed-form n={n}"));
        }
    }
    let mut report = Report::new(cfg, table);
    report.note("identification_tol", format!("{IDENTIFICATION_TOL:e}"));
    report.note("resubstitution_tol", format!("{RESUBSTITUTION_TOL:e}"));
    report.note("closed_form_tol", format!("{CLOSED_FORM_TOL:e} for m <= {CLOSED_FORM_MAX_M}"));
    if let Some(path) = &cfg.coefficients {
        coefficient_report(cfg, &built).emit(cfg.format, Some(path))?;
        report.note("coefficient_rows", (built.len() * 4 * (cfg.terms + 1)).to_string());
    }
    Ok(Outcome { report, failures })
}

fn coefficient_report(cfg: &RunConfig, built: &[Row]) -> Report {
    let mut table = Table::new(&["n", "s", "k", "re_c", "im_c"]);
    for row in built {
        for s in 0..4 {
            for (k, c) in row.series.component(s).into_iter().enumerate() {
                table.push(vec![row.n.into(), Cell::from(s + 1), k.into(), c.re.into(), c.im.into()]);
            }
        }
    }
    Report::new(cfg, table)
}
