use std::process::ExitCode;

use clap::Parser;
use scenetext_cli::args::Cli;

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, the same code as configuration errors
    let cli = Cli::parse();
    match scenetext_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("scenetext: {e}");
            e.exit_code()
        }
    }
}
