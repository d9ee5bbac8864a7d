use std::process::ExitCode;

use clap::Parser;
use discrim::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli, &mut std::io::stdout().lock())
}
