use rayon::prelude::*;
use vortex_core::bessel::bracket_first_zero;
use vortex_core::{first_positive_zero, BesselSeriesConfig};

use super::Outcome;
use crate::config::RunConfig;
use crate::error::{bad, Result};
use crate::output::{Cell, Report, Table};

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let orders = cfg.indices.values();
    if orders.iter().any(|&n| n < 0) {
        return Err(bad("zeros needs orders >= 0"));
    }
    let rows = orders
        .par_iter()
        .map(|&n| {
            let zero = first_positive_zero(n)?;
            let (lo, hi) = bracket_first_zero(n, &BesselSeriesConfig::default())?;
            Ok(vec![Cell::from(n), zero.into(), lo.into(), hi.into()])
        })
        .collect::<vortex_core::Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    let values: Vec<f64> = rows.iter().map(|r| if let Cell::Real(x) = r[1] { x } else { f64::NAN }).collect();
    if values.windows(2).any(|w| w[1] <= w[0]) {
        failures.push("zeros-increasing".to_string());
    }
    let table = Table { columns: vec!["order", "first_zero", "bracket_low", "bracket_high"], rows };
    Ok(Outcome { report: Report::new(cfg, table), failures })
}
