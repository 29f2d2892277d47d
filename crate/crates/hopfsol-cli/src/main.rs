//! `hopfsol` — solve the Hopf-soliton profile equations, evaluate the
//! Hopf invariant three independent ways, link fibers and export
//! plot-ready data.
//!
//! Exit codes: 0 success, 1 usage/input error, 2 solver non-convergence,
//! 3 verification failure.

mod commands;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hopfsol", version, about, max_term_width = 100)]
struct Cli {
    /// Output directory for generated files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for quadratures (results are bit-stable per count)
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Seed for randomised checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Replay a previous run from its manifest (other flags are ignored)
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solve the radial boundary-value problem for f(r), g(r)
    Solve(commands::SolveArgs),
    /// Hopf invariant by form and Chern-Simons quadrature (and on a
    /// profile boundary)
    Invariant(commands::InvariantArgs),
    /// Gauss linking number of two fibers
    Link(commands::LinkArgs),
    /// Run the identity/verification suite
    Verify(commands::VerifyArgs),
    /// Export plot-ready CSV data
    Export(commands::ExportArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage problems are exit 1 by contract
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let ctx = commands::Ctx {
        out: cli.out,
        workers: cli.workers.max(1),
        seed: cli.seed,
        manifest: cli.manifest,
    };
    let result = match cli.cmd {
        Cmd::Solve(args) => commands::run_solve(args, &ctx),
        Cmd::Invariant(args) => commands::run_invariant(args, &ctx),
        Cmd::Link(args) => commands::run_link(args, &ctx),
        Cmd::Verify(args) => commands::run_verify(args, &ctx),
        Cmd::Export(args) => commands::run_export(args, &ctx),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
