use std::process::ExitCode;

use clap::Parser;
use symgen::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
