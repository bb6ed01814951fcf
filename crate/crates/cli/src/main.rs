mod commands;
mod error;
mod statefile;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tritangle::SloccClass;

use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "tritangle",
    version,
    about = "Three-qubit entanglement classification from a few observables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct TolArg {
    /// Zero threshold of the decision tree
    #[arg(long, env = "TRITANGLE_TOL", default_value_t = 1e-8, value_parser = positive)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// SLOCC class of a pure state, with the quantities behind the verdict
    Classify {
        path: PathBuf,
        #[command(flatten)]
        tol: TolArg,
        #[arg(long)]
        json: bool,
    },
    /// Canonical parameters and the local unitaries that reach them
    Canonicalize {
        path: PathBuf,
        /// Also write the canonical state as a state file
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Partial tangles and teleportation fidelities
    Fidelity {
        path: PathBuf,
        #[command(flatten)]
        tol: TolArg,
        #[arg(long)]
        json: bool,
    },
    /// Observable measure against the tangle lower bound on a parameter grid (CSV)
    Sweep {
        /// 1: GHZ/W mixture; 2: damped state mixed with white noise
        #[arg(long)]
        figure: u32,
        /// Weight of the pure part for figure 2
        #[arg(long)]
        m: Option<f64>,
        #[arg(long, default_value_t = tritangle::mixed::DEFAULT_GRID_POINTS)]
        grid_points: usize,
        /// CSV destination; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-shot estimates and the verdict they support
    Shots {
        path: PathBuf,
        /// Shots per observable
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Nonzero threshold in standard errors
        #[arg(long, default_value_t = tritangle::shots::DEFAULT_K_SIGMA, value_parser = positive)]
        k_sigma: f64,
        #[arg(long)]
        json: bool,
    },
    /// Sample a random state of a given class
    Random {
        #[arg(long, value_parser = parse_class)]
        class: SloccClass,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// State-file destination; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number, found `{s}`")),
    }
}

fn parse_class(s: &str) -> Result<SloccClass, String> {
    s.parse().map_err(|e: tritangle::Error| e.to_string())
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Classify { path, tol, json } => commands::classify(&path, tol.tol, json),
        Command::Canonicalize { path, out, json } => {
            commands::canonicalize(&path, out.as_deref(), json)
        }
        Command::Fidelity { path, tol, json } => commands::fidelity(&path, tol.tol, json),
        Command::Sweep {
            figure,
            m,
            grid_points,
            out,
        } => commands::sweep(figure, m, grid_points, out.as_deref()),
        Command::Shots {
            path,
            shots,
            seed,
            k_sigma,
            json,
        } => commands::shots(&path, shots, seed, k_sigma, json),
        Command::Random { class, seed, out } => commands::random(class, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
