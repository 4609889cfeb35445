mod args;
mod commands;
mod error;
mod output;
mod reproduce;
mod settings;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{usage, CliResult};

/// Sizes the global pool from FRACDYN_THREADS (default: all cores).
fn init_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("FRACDYN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("FRACDYN_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("FRACDYN_THREADS: {e}")))
}

fn run(cli: &Cli) -> CliResult<String> {
    init_threads()?;
    match &cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Lyapunov(a) => commands::lyapunov(a),
        Command::Dimension(a) => commands::dimension(a),
        Command::Stability(a) => commands::stability(a),
        Command::Mlf(a) => commands::mlf(a),
        Command::ListSystems => Ok(commands::list_systems()),
        Command::Reproduce(a) => reproduce::reproduce(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
