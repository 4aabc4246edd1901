use std::process::ExitCode;

use clap::Parser;

use sector_kit::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    match cli::run(&args) {
        Ok(outcome) => {
            let written = match &args.out {
                Some(path) => std::fs::write(path, &outcome.text),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                let err = sector_kit::Error::from(e);
                eprintln!("{}", cli::error_json(&err));
                return ExitCode::from(err.exit_code() as u8);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(err) => {
            eprintln!("{}", cli::error_json(&err));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
