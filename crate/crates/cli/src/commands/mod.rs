//! One module per subcommand. Each returns the report to write and the
//! names of any invariants that failed.

pub mod observables;
pub mod series_check;
pub mod state;
pub mod verify;
pub mod zeros;

use crate::config::{CommandKind, Indices, RunConfig};
use crate::error::{bad, Result};
use crate::output::Report;

pub struct Outcome {
    pub report: Report,
    pub failures: Vec<String>,
}

pub fn dispatch(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        CommandKind::State => state::run(cfg),
        CommandKind::Observables => observables::run(cfg),
        CommandKind::Verify => verify::run(cfg),
        CommandKind::SeriesCheck => series_check::run(cfg),
        CommandKind::Zeros => zeros::run(cfg),
    }
}

pub(crate) fn single_index(cfg: &RunConfig) -> Result<i32> {
    match cfg.indices {
        Indices::Single(n) => Ok(n),
        Indices::Range(..) => Err(bad(format!("{} takes a single n", cfg.command.name()))),
    }
}
