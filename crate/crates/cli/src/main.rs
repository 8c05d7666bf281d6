//! `qrc`: reproduce crossing tables, inspect spectra and densities, trace the
//! asymmetric locus, and run parameter sweeps.

mod commands;
mod config;
mod output;
mod svg;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{density, locus, spectrum, sweep, table1, CliResult};

#[derive(Debug, Parser)]
#[command(name = "qrc", version, about = "Relocalization catastrophes in multi-well polynomial potentials")]
struct Cli {
    /// Print timings to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Crossing parameters δ(m, n) of the symmetric sextic.
    Table1(table1::Table1Args),
    /// Labelled low-lying levels, harmonic or numerical.
    Spectrum(spectrum::SpectrumArgs),
    /// Probability density of one level as CSV or SVG.
    Density(density::DensityArgs),
    /// Critical δ against the cubic tilt ε, linearized and exact.
    Locus(locus::LocusArgs),
    /// Relocalization scans or crossing grids from a config file.
    Sweep(sweep::SweepArgs),
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Table1(a) => table1::run(a),
        Command::Spectrum(a) => spectrum::run(a),
        Command::Density(a) => density::run(a),
        Command::Locus(a) => locus::run(a),
        Command::Sweep(a) => sweep::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let start = std::time::Instant::now();
    let result = run(&cli);
    if cli.verbose {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qrc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
