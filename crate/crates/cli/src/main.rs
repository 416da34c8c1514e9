use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qshape_cli::args::Cli;
use qshape_cli::{commands, control_from_env, TOL_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result =
        control_from_env(std::env::var(TOL_ENV).ok()).and_then(|ctrl| commands::run(&cli, &ctrl));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
