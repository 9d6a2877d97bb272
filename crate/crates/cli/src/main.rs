use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::RunConfig;

#[derive(Parser, Debug)]
#[command(
    name = "hilbasis",
    version,
    about = "Hilbert bases and short integer Carathéodory decompositions"
)]
struct Cli {
    /// Worker threads for box sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Oracle,
    Lp,
    Descent,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Δ(A), the largest absolute maximal minor of the cone matrix.
    Delta { cone: PathBuf },
    /// Compute the Hilbert basis and print it as a basis file.
    Hilbert { cone: PathBuf },
    /// Decompose a cone point into Hilbert basis elements.
    Decompose {
        cone: PathBuf,
        /// Coordinates of the point.
        #[arg(required = true, allow_negative_numbers = true, num_args = 1..)]
        point: Vec<String>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Descent)]
        strategy: StrategyArg,
        /// Largest support the oracle may search (default 2n - 2).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Largest σ over the cone points of the box [-δ, δ]^n.
    Cr {
        cone: PathBuf,
        #[arg(long = "box", value_name = "DELTA")]
        radius: i64,
    },
    /// Fraction of box points with σ <= k, one CSV row per box radius.
    Density {
        cone: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(
            long = "box",
            value_name = "DELTAS",
            value_delimiter = ',',
            required = true
        )]
        radii: Vec<i64>,
    },
    /// Check a basis file: irreducibility of every element and generation of the box.
    Verify {
        cone: PathBuf,
        basis: PathBuf,
        #[arg(long = "box", value_name = "DELTA")]
        radius: i64,
    },
    /// A non-zero lattice point of P_1(A) for square A with n >= |det A|.
    Pigeonhole { matrix: PathBuf },
    /// Seeded random face-descent runs.
    RandomSuite {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta_max: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig::from_cli(&cli);
    match commands::run(&cli.command, &cfg) {
        Ok(out) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if let Some(text) = &e.partial {
                print!("{text}");
            }
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
