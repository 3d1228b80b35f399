use std::f64::consts::TAU;

use rayon::prelude::*;
use vortex_core::{BeamState, CylPoint, QuadratureConfig, QuantumNumbers, RadialGrid, Spacing};

use super::{single_index, Outcome};
use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{Cell, Report, Table};

const COLUMNS: [&str; 12] = [
    "r", "theta", "z", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "re_psi3", "im_psi3", "re_psi4", "im_psi4",
    "density",
];

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let qn = QuantumNumbers::new(single_index(cfg)?, cfg.kappa, cfg.k_z, cfg.branch)?;
    let state = BeamState::new(qn, &cfg.units, cfg.length, cfg.cutoff, &QuadratureConfig::default())?;
    let grid = RadialGrid::new(Spacing::UniformOffset, state.geometry.r1, cfg.grid)?;
    let rows: Vec<Vec<Cell>> = grid
        .nodes
        .par_iter()
        .flat_map_iter(|&r| {
            let state = &state;
            (0..cfg.angular).map(move |j| {
                let theta = TAU * j as f64 / cfg.angular as f64;
                let sample = state.sample(CylPoint::new(r, theta, cfg.z));
                let mut row: Vec<Cell> = vec![r.into(), theta.into(), cfg.z.into()];
                for c in sample.psi {
                    row.push(c.re.into());
                    row.push(c.im.into());
                }
                row.push(sample.density().into());
                row
            })
        })
        .collect();
    let mut report = Report::new(cfg, Table { columns: COLUMNS.to_vec(), rows });
    report.note("energy", format!("{:.16e}", state.kin().energy));
    report.note("r1", format!("{:.16e}", state.geometry.r1));
    report.note("I1", format!("{:.16e}", state.i1));
    report.note("normalization", format!("{:.16e}", state.norm));
    Ok(Outcome { report, failures: Vec::new() })
}
