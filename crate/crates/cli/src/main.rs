use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use subranks_cli::args::{Cli, Command};
use subranks_cli::{commands, exit_code};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match commands::run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = report.to_pretty();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let failed_verification = matches!(cli.command, Command::VerifyReport { .. })
        && report.results.get("all_ok") == Some(&serde_json::Value::Bool(false));
    if failed_verification {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
