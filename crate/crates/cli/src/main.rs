mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::output::Format;

/// Cyclic orbit flag codes over finite fields.
#[derive(Debug, Parser)]
#[command(name = "orbitflag", version)]
pub struct Cli {
    /// Ground field order (a prime power).
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Extension degree.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Field modulus coefficients over F_p, constant term first, comma separated.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Input flag file.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Report destination (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// TOML file with scan caps and enumeration budgets.
    #[arg(long, global = true)]
    pub budget: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit, best friend and distance report for a flag file.
    Analyze,
    /// Build a flag with a given best friend vector.
    Construct {
        /// Best friend vector, e.g. 3,2,1.
        #[arg(long)]
        bfv: String,
        /// Also write the flag file alone to this path.
        #[arg(long)]
        flag_out: Option<PathBuf>,
    },
    /// Lower and upper bounds on the minimum distance.
    Bounds {
        #[arg(long)]
        bfv: String,
        /// Type vector, e.g. 2,4,8.
        #[arg(long = "type")]
        type_vector: String,
    },
    /// Feasibility of a distance vector.
    Dvec {
        #[arg(long = "type")]
        type_vector: String,
        /// Distance vector, e.g. 2,0,14,18.
        #[arg(long)]
        d: String,
        /// Also search for a realizing pair of flags over F_{q^n}.
        #[arg(long)]
        search: bool,
    },
    /// Realizability verdict for a best friend vector.
    Realizable {
        #[arg(long)]
        bfv: String,
        /// Confirm by exhaustive search over F_{q^n}.
        #[arg(long)]
        oracle: bool,
    },
    /// Run verification suites.
    Verify {
        /// field, metric, subspace, flag, bounds, construct, oracle or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Field parameters, tables and subfields.
    FieldInfo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_INPUT);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Some(note) = &outcome.note {
                eprintln!("{note}");
            }
            match output::emit(&outcome.text, cli.out.as_deref()) {
                Ok(()) => ExitCode::from(outcome.code),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(commands::EXIT_INPUT)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
