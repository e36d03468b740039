use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = abhol_cli::Cli::parse();
    match abhol_cli::run(&cli, &mut std::io::stdout().lock()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
