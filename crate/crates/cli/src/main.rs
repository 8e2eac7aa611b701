use std::io::{self, Write};
use std::process::ExitCode;

use greenbits_cli::metadata::timestamp_from_env;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = match timestamp_from_env() {
        Ok(ts) => greenbits_cli::run(std::env::args_os().collect(), &ts, &mut out, &mut err),
        Err(e) => {
            let _ = writeln!(err, "greenbits: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
