use std::process::ExitCode;

use spacelike_cli::args::{parse_args, ParseFailure};
use spacelike_cli::error::exit;

fn main() -> ExitCode {
    let cli = match parse_args(std::env::args_os().collect()) {
        Ok(cli) => cli,
        Err(ParseFailure::Clap(e)) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
        Err(ParseFailure::Config(e)) => {
            eprintln!("spacelike: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match spacelike_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spacelike: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
