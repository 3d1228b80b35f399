use std::process::ExitCode;

use clap::Parser;
use vortex_cli::config::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match vortex_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("revb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
