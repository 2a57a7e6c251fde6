use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;

use redheffer_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    ExitCode::from(redheffer_cli::run(&cli, &mut out, &mut err))
}
