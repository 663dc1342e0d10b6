//! `mdual`: check dualities between modal frames and relational spaces from JSON files.
//!
//! Exit codes: 0 pass, 1 fail, 2 invalid input or usage.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modal_duality::ConstructionMode;

mod commands;

#[derive(Parser)]
#[command(name = "mdual", version, about = "Finite modal frame / relational space duality checks")]
struct Cli {
    /// Print a prose summary instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    human: bool,
    /// Print JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a lattice, frame, space or map file and report its classification.
    Validate {
        file: PathBuf,
        /// Source object, for map files.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Target object, for map files.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// The frame of opens of a space, with the class report.
    Omega {
        space: PathBuf,
        /// Also write the frame to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Construct the point space of a frame.
    Points {
        frame: PathBuf,
        #[arg(long)]
        mode: ConstructionMode,
        /// Also write the space to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Include every deleted pre-point with its witness.
        #[arg(long)]
        trace_pruning: bool,
    },
    /// Duality verdicts.
    #[command(subcommand)]
    Check(Check),
    /// Evaluate a formula on a space.
    Modelcheck {
        space: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        formula: String,
        /// Report satisfaction at this point; exit 1 when it fails.
        #[arg(long)]
        point: Option<String>,
        /// Reject `->`.
        #[arg(long)]
        no_imp: bool,
    },
    /// Check that a morphism preserves satisfaction of every formula up to a depth.
    Bisim {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// File with `source` and `target` valuations.
        #[arg(long)]
        valuations: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        no_imp: bool,
    },
    /// Ideal completion of a frame and its unit.
    Idl {
        frame: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Enumerate small frames and spaces and run every invariant suite.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum Check {
    /// Whether `phi` is an isomorphism for a frame.
    Spatial {
        frame: PathBuf,
        #[arg(long)]
        mode: ConstructionMode,
    },
    /// Whether `psi` is an isomorphism for a space.
    Sober {
        space: PathBuf,
        #[arg(long)]
        mode: ConstructionMode,
    },
    /// The triangle identity on a frame or a space.
    Triangles {
        file: PathBuf,
        #[arg(long)]
        mode: ConstructionMode,
    },
    /// Exhaustive comparison of hom(A, Omega X) and hom(X, F A).
    Adjunction {
        frame: PathBuf,
        space: PathBuf,
        #[arg(long)]
        mode: ConstructionMode,
        #[arg(long)]
        sequential: bool,
    },
    /// Spatiality of every frame and sobriety of every space given.
    Duality {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        mode: ConstructionMode,
        #[arg(long)]
        sequential: bool,
    },
    /// Axioms against relation properties, for a frame (in a mode) or a space.
    Correspondence {
        file: PathBuf,
        #[arg(long)]
        mode: Option<ConstructionMode>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Largest lattice size; 0 skips frames.
    #[arg(long, default_value_t = 5)]
    max_lattice: usize,
    /// Largest space size.
    #[arg(long, default_value_t = 3)]
    max_points: usize,
    /// Skip spaces.
    #[arg(long)]
    no_spaces: bool,
    /// Comma-separated modes; all by default.
    #[arg(long, value_delimiter = ',')]
    modes: Vec<ConstructionMode>,
    /// Enumerate spaces up to isomorphism.
    #[arg(long)]
    up_to_iso: bool,
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
