//! Command-line front end: `eval`, `sweep` and `verify`.
//!
//! Exit codes: 0 success, 1 domain/numerical/I/O failure, 2 invalid or
//! missing flags, 3 `verify` disagreement.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod metadata;
pub mod params;
pub mod units;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
pub use error::CliError;

/// Runs one invocation. `timestamp` goes into the metadata block; see
/// [`metadata::timestamp_from_env`].
pub fn run(argv: Vec<OsString>, timestamp: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match try_run(argv, timestamp, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "greenbits: {e}");
            e.exit_code()
        }
    }
}

fn try_run(
    argv: Vec<OsString>,
    timestamp: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let argv = config::expand(argv)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return Ok(e.exit_code());
        }
    };
    match &cli.command {
        Command::Eval(a) => commands::eval(a, timestamp, out),
        Command::Sweep(a) => commands::sweep(a, timestamp, out),
        Command::Verify(a) => commands::verify(a, timestamp, out),
    }
}
