//! Command-line harness for one-round similarity-join protocols on the
//! Hamming cube: seeded experiment sweeps, combinatorial verification,
//! and a brute-force join oracle.

mod config;
mod oraclecmd;
mod par;
mod runcmd;
mod verifycmd;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "simjoin",
    version,
    about = "One-round similarity-join protocol simulator on the Hamming cube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a config-driven experiment sweep; writes results.csv and
    /// summary.json under --out.
    Run {
        /// Experiment configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Worker threads; affects wall-clock only, never results.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the inequality and property check suites and print one line per
    /// check; exit 0 iff nothing failed.
    Verify {
        /// Scope(s) to run; defaults to all. Repeatable.
        #[arg(long = "scope")]
        scopes: Vec<String>,
        /// Cap the sweep dimension where a suite supports it.
        #[arg(long = "max-d")]
        max_d: Option<u32>,
        /// Base seed for the Monte-Carlo checks.
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        /// Sample count for the Monte-Carlo checks.
        #[arg(long, default_value_t = 1500)]
        samples: u64,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print all pairs of the input within distance r, one per line.
    Oracle {
        /// PointSet text file (`d=<dim>` header, one binary point per line).
        #[arg(long)]
        input: PathBuf,
        /// Distance threshold.
        #[arg(long)]
        r: u32,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, jobs, out } => runcmd::execute(&config, jobs, &out).map(|()| 0),
        Command::Verify {
            scopes,
            max_d,
            seed,
            samples,
            json,
        } => verifycmd::execute(&scopes, max_d, seed, samples, json.as_deref()),
        Command::Oracle { input, r } => oraclecmd::execute(&input, r).map(|()| 0),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}
