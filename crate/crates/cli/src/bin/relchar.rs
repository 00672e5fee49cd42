use std::process::ExitCode;

use clap::Parser;

use relchar_cli::commands::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verifying = matches!(cli.command, relchar_cli::commands::Command::Verify { .. });
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            // A failing verification still prints its report on stdout.
            if verifying && e.code == 1 {
                print!("{}", e.message);
            } else {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code as u8)
        }
    }
}
