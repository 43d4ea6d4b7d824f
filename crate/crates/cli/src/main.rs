mod cli;
mod commands;
mod config;
mod model;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command, Emit};
use commands::Rendered;
use config::CliError;

fn emit(target: &Emit, bytes: &[u8]) -> Result<(), CliError> {
    match &target.output {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = config::thread_count()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot start {n} worker threads: {e}")))?;
    }
    let (rendered, target): (Rendered, &Emit) = match &cli.command {
        Command::SampleSize(a) => (commands::sample_size(a)?, &a.emit),
        Command::MinCoverage(a) => (commands::min_coverage_cmd(a)?, &a.emit),
        Command::CoverageCurve(a) => (commands::coverage_curve(a)?, &a.emit),
        Command::Candidates(a) => (commands::candidates(a)?, &a.emit),
        Command::Verify(a) => (commands::verify(a)?, &a.emit),
    };
    emit(target, &rendered.bytes)?;
    rendered.failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
