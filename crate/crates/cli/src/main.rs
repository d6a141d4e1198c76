use std::process::ExitCode;

use clap::Parser;
use quantic_cli::{run, Cli, Outcome, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { Outcome::UsageError as u8 } else { 0 });
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg, &mut std::io::stdout().lock()));
    match result {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.outcome as u8)
        }
    }
}
