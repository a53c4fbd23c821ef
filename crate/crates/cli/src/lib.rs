//! Command-line front end: batch detection, recognition, evaluation and
//! benchmarking, plus the HTTP service used by the annotation UI.

pub mod args;
pub mod commands;
pub mod config;
pub mod failure;
pub mod server;

use args::{Cli, Command};
use failure::CliResult;

pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Detect(a) => commands::detect::run(a),
        Command::Recognize(a) => commands::recognize::run(a),
        Command::Eval(a) => commands::eval::run(a),
        Command::Bench(a) => commands::bench::run(a),
        Command::ServeAnnotate(a) => commands::serve::run(a),
        Command::Synth(a) => commands::synth::run(a),
    }
}
