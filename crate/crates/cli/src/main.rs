//! `ergokit` command-line tool.
//!
//! Exit codes: 0 success, 2 malformed input or flags, 3 invalid state or
//! arguments, 4 Hamiltonian outside the supported model, 1 output failure.
//! Verdicts are part of the report and never change the exit code.

mod args;
mod commands;
mod error;
mod io;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    if let Err(err) = commands::run(cli) {
        eprintln!("ergokit: {err}");
        std::process::exit(err.exit_code());
    }
}
