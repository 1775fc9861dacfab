use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sprsynth::cli::{error_value, exit_code, run, Cli, JobSpec};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match JobSpec::from_cli(&cli) {
        Ok(spec) => run(&spec),
        Err(err) => {
            let mut body = serde_json::to_string_pretty(&error_value(&err)).unwrap_or_default();
            body.push('\n');
            sprsynth::cli::RunOutcome {
                exit_code: exit_code(&err),
                stdout: String::new(),
                stderr: body,
            }
        }
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
