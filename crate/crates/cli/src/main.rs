//! `spanner`: build Euclidean spanners, verify their dilation, and generate
//! the Koch counterexample graphs.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage or input errors.

mod commands;
mod config;
mod error;
mod svg;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{build, gen, koch, sweep, verify, Outcome};

#[derive(Debug, Parser)]
#[command(name = "spanner", version, about = "Geometric spanners under the Hausdorff and Frechet distances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded point set as CSV
    Gen(gen::GenArgs),
    /// Build a greedy or WSPD spanner from a point file
    Build(build::BuildArgs),
    /// Check stretch, Hausdorff and Frechet dilation of a graph
    Verify(verify::VerifyArgs),
    /// Emit the Koch graph F_n and check its level lemmas
    Koch(koch::KochArgs),
    /// Tabulate bounds against measured dilation over t or over n
    Sweep(sweep::SweepArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => gen::run(a),
        Command::Build(a) => build::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Koch(a) => koch::run(a),
        Command::Sweep(a) => sweep::run(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
