use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use respgames_cli::{report, run, Cli, Format};

fn main() -> ExitCode {
    // Usage errors are invalid input (exit 1); help and version exit 0.
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() { 1 } else { 0 });
    });
    let (value, code) = match run(&cli) {
        Ok(outcome) => (outcome.report, outcome.code),
        Err(e) => (e.to_json(), e.exit_code()),
    };
    let text = match cli.config.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("reports serialize") + "\n",
        Format::Table => report::table(&value),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
