//! `polyreal`: enumerate string C-groups, build their polyhedra and write
//! realizations.
//!
//! Exit status: 0 on success, 2 when a realization is refused (no Wythoff
//! space, or a family the facets cannot carry), 1 on any other failure.

mod check;
mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyreal_core::geomesh::{Family, PlateauParams};
use polyreal_core::Execution;

#[derive(Parser)]
#[command(name = "polyreal", version, about = "Regular polyhedra from string C-groups and their Wythoff realizations")]
struct Cli {
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the string C-group classes with their Wythoff dimensions.
    Enumerate {
        /// `h3` or a JSON file of generator matrices.
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Write the Hasse diagram, poset JSON and axiom report of one class.
    Poset {
        group: String,
        /// `p,q` or `p,q:x`, e.g. `10,3:b`.
        selector: String,
        #[arg(long, env = "POLYREAL_OUT_DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Realize one class and write skeleton JSON, OBJ and metadata.
    Realize {
        group: String,
        selector: String,
        /// `phi1`, `phi2`, or `native` for the group's own matrices.
        #[arg(long, default_value = "native")]
        rep: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::Auto)]
        family: FamilyArg,
        #[arg(long, env = "POLYREAL_OUT_DIR", default_value = ".")]
        out: PathBuf,
        /// Also write an ASCII PLY mesh.
        #[arg(long)]
        ply: bool,
        #[arg(long)]
        samples_per_edge: Option<usize>,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        max_iterations: Option<usize>,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Run the invariant suites and print a JSON pass/fail report.
    Check {
        group: String,
        /// Restrict the per-class checks to one class.
        selector: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sp,
    Co,
    St,
    Sk,
    Auto,
}

impl FamilyArg {
    fn family(self) -> Option<Family> {
        match self {
            FamilyArg::Sp => Some(Family::Spherical),
            FamilyArg::Co => Some(Family::Convex),
            FamilyArg::St => Some(Family::Star),
            FamilyArg::Sk => Some(Family::Skew),
            FamilyArg::Auto => None,
        }
    }
}

pub enum Failure {
    Refused(String),
    Invariant(String),
    Other(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Other(e.into())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mode = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match cli.command {
        Command::Enumerate { group, json } => {
            let src = source::load(&group, mode)?;
            print!("{}", commands::enumerate(&src, json)?);
        }
        Command::Poset { group, selector, out } => {
            let src = source::load(&group, mode)?;
            commands::poset(&src, &selector, &out, mode)?;
        }
        Command::Realize {
            group,
            selector,
            rep,
            family,
            out,
            ply,
            samples_per_edge,
            step,
            tolerance,
            max_iterations,
            levels,
        } => {
            let d = PlateauParams::default();
            let plateau = PlateauParams {
                samples_per_edge: samples_per_edge.unwrap_or(d.samples_per_edge),
                step: step.unwrap_or(d.step),
                tolerance: tolerance.unwrap_or(d.tolerance),
                max_iterations: max_iterations.unwrap_or(d.max_iterations),
                levels: levels.unwrap_or(d.levels),
            };
            plateau.validate()?;
            let src = source::load(&group, mode)?;
            let req = commands::RealizeRequest {
                selector: &selector,
                representation: &rep,
                family: family.family(),
                plateau,
                out: &out,
                ply,
                mode,
            };
            commands::realize(&src, &req)?;
        }
        Command::Check { group, selector } => {
            let report = check::check(&group, selector.as_deref(), mode)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            if !report.passed {
                return Err(Failure::Invariant(format!("{} check(s) failed", report.failed_count)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
