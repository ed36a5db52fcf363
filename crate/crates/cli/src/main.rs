//! `token-spectra`: orbit tables, over-lift matrices, spectra and sector
//! polynomials of token graphs of cycles.
//!
//! Exit status is 0 on success, 1 when a verification or cross-check fails
//! and 2 for invalid arguments.

mod args;
mod charpoly;
mod error;
mod matrix;
mod orbits;
mod output;
mod spectrum;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match &cli.command {
        Command::Orbits(a) => orbits::run(a),
        Command::Matrix(a) => matrix::run(a),
        Command::Spectrum(a) => spectrum::run(a),
        Command::Charpoly(a) => charpoly::run(a),
        Command::Verify(a) => verify::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
