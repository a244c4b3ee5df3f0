mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig, WARN_ORDER};
use error::CliError;

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("DISPERSION_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("DISPERSION_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = RunConfig::from_cli(cli)?;
    if cfg.max_order() > WARN_ORDER {
        eprintln!("warning: order {} is beyond {WARN_ORDER}; expect long run times", cfg.max_order());
    }
    let files = commands::run(&cfg)?;
    output::write_all(&cfg.out, &files)?;
    for f in &files {
        println!("{}", cfg.out.join(&f.name).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
