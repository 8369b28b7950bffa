use std::process::ExitCode;

use clap::Parser;
use polydiag::{cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match cli::run(&config).and_then(|out| cli::emit(&config, &out).map(|()| out.exit_code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
