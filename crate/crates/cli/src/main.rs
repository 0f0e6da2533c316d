//! `ctv` — exact critical threshold values for simple games.

mod commands;
mod format;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{
    cmd_analyze, cmd_analyze_dir, cmd_certify, cmd_crosscheck, cmd_generate, GenerateParams,
    MethodChoice,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ctv",
    about = "Exact critical threshold values of simple games: compute, cross-check, certify.",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Full,
    Cutgen,
    Blocker,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a game file: threshold value, weightedness, min-norm point,
    /// quarter-bound identity, tightness certificates.
    Analyze {
        /// Game file, or a directory with --dir.
        path: PathBuf,
        /// Solve by full enumeration (same as --method full).
        #[arg(long)]
        full: bool,
        /// Threshold computation route.
        #[arg(long, value_enum, default_value = "cutgen")]
        method: MethodArg,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Treat PATH as a directory and analyze every .json inside.
        #[arg(long)]
        dir: bool,
    },
    /// Re-run every oracle-vs-optimized equivalence for one game.
    Crosscheck {
        path: PathBuf,
    },
    /// Write a game file for a named family.
    Generate {
        /// pairs | dictator | unanimity | weighted | random
        family: String,
        /// Player count.
        n: usize,
        /// Seed for the random family.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Inclusion density for the random family.
        #[arg(long, default_value_t = 0.35)]
        density: f64,
        /// Comma-separated rational weights for the weighted family.
        #[arg(long)]
        weights: Option<String>,
        /// Output path (stdout if absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a stored analysis report, including its certificate.
    Certify {
        path: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            path,
            full,
            method,
            json_out,
            dir,
        } => {
            let method = if full {
                MethodChoice::Full
            } else {
                match method {
                    MethodArg::Full => MethodChoice::Full,
                    MethodArg::Cutgen => MethodChoice::Cutgen,
                    MethodArg::Blocker => MethodChoice::Blocker,
                }
            };
            if dir {
                cmd_analyze_dir(&path, method)
            } else {
                cmd_analyze(&path, method, json_out.as_deref())
            }
        }
        Command::Crosscheck { path } => cmd_crosscheck(&path),
        Command::Generate {
            family,
            n,
            seed,
            density,
            weights,
            out,
        } => cmd_generate(
            &GenerateParams {
                family,
                n,
                seed,
                density,
                weights,
            },
            out.as_deref(),
        ),
        Command::Certify { path } => cmd_certify(&path),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
