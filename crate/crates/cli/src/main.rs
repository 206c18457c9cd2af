use std::process::ExitCode;

use clap::Parser;
use stringnet_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    // the echo leaves out the program path so reports do not depend on it
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let outcome = match run(&cli, &echo) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    ExitCode::from(outcome.code)
}
