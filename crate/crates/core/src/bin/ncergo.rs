use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ncergo::config::ExperimentConfig;
use ncergo::experiments::{self, ResultRow};
use ncergo::parse_scalar;

#[derive(Parser)]
#[command(name = "ncergo", version, about = "Ergodic averages on quantum tori and free-group dual systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the property suites and print one PASS/FAIL line per invariant.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ergodic averages of the configured observable.
    Average {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Averaged coupling against its limiting joining.
    Disjoint {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Correlation averages on a free-group dual system.
    Group {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Symbolic algebra against truncated matrices.
    Oracle {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 16)]
        truncation: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn table(
    config: &Path,
    out: &Path,
    run: fn(&ExperimentConfig) -> ncergo::Result<Vec<ResultRow>>,
) -> ncergo::Result<bool> {
    let config = ExperimentConfig::from_path(config)?;
    experiments::write_csv(out, &run(&config)?)?;
    Ok(true)
}

fn run(cli: Cli) -> ncergo::Result<bool> {
    match cli.command {
        Command::Verify { suite, seed } => {
            let checks = experiments::verify(suite.as_deref(), seed)?;
            for check in &checks {
                println!("{check}");
            }
            Ok(checks.iter().all(|c| c.passed))
        }
        Command::Average { config, out } => table(&config, &out, experiments::run_average),
        Command::Disjoint { config, out } => table(&config, &out, experiments::run_disjoint),
        Command::Group { config, out } => table(&config, &out, experiments::run_group),
        Command::Oracle {
            theta,
            truncation,
            samples,
            seed,
        } => {
            let check = experiments::oracle_check(&parse_scalar(&theta)?, truncation, samples, seed)?;
            println!("{check}");
            Ok(check.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
