//! Command-line front end for `vortex-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use config::{Cli, RunConfig};
use error::{CliError, Result};

/// Resolves the configuration, runs the command on a pool of the requested
/// size and writes the report. Invariant failures are returned after the
/// report has been written.
pub fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::from_cli(cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::BadInput(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| commands::dispatch(&cfg))?;
    outcome.report.emit(cfg.format, cfg.out.as_deref())?;
    if outcome.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(outcome.failures))
    }
}
