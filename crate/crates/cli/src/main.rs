use std::process::ExitCode;

use clap::Parser;
use tsirelson_cli::config::Args;
use tsirelson_cli::{execute, RunConfig};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            // --help and --version are not errors.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match RunConfig::try_from(args).and_then(|cfg| execute(&cfg)) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(failure)) => {
            eprintln!("tsirelson: numerical failure: {failure}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("tsirelson: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
