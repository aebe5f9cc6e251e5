//! `qsd` — quantum state discrimination toolkit.
//!
//! Exit codes: 0 on success, 1 when the reproduction report contains a
//! failing row, 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qsd_cli::{report, reproduce, table};
use qsd_core::discrimination::helstrom_error_with_prior;
use qsd_core::linalg::DensityOperator;
use qsd_core::mc::{estimate_error, Scenario, SimulationRecord};

use report::Status;
use table::{Format, Quantity};

#[derive(Parser)]
#[command(
    name = "qsd",
    version,
    about = "Quantum state discrimination: rival ensemble preparations, optimal error bounds, and Monte Carlo checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-error probability for two density operators read from JSON files.
    Helstrom {
        /// First density operator (JSON).
        rho1: PathBuf,
        /// Second density operator (JSON).
        rho2: PathBuf,
        /// Prior probability of the first hypothesis.
        #[arg(long, default_value_t = 0.5)]
        prior: f64,
    },
    /// Closed-form tables (CSV or JSON) over a range of particle numbers n.
    Table {
        #[arg(value_enum)]
        quantity: Quantity,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Monte Carlo identification-error estimate for a scenario JSON file.
    Simulate {
        /// Scenario description (JSON).
        scenario: PathBuf,
    },
    /// Recompute every reference quantity and print one pass/fail row each.
    ReproduceAll {
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Human,
    Json,
    Csv,
}

fn read_density_operator(path: &Path) -> Result<DensityOperator> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("invalid density operator in {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Helstrom { rho1, rho2, prior } => {
            let rho1 = read_density_operator(&rho1)?;
            let rho2 = read_density_operator(&rho2)?;
            let result = helstrom_error_with_prior(&rho1, &rho2, prior)?;
            println!("{}", serde_json::to_string_pretty(&result)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            quantity,
            n_min,
            n_max,
            format,
        } => {
            print!("{}", table::render(quantity, n_min, n_max, format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { scenario: path } => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let scenario: Scenario = serde_json::from_str(&text)
                .with_context(|| format!("invalid scenario in {}", path.display()))?;
            scenario.validate()?;
            let estimate = estimate_error(&scenario)?;
            let record = SimulationRecord::new(&scenario, estimate);
            println!("{}", serde_json::to_string_pretty(&record)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproduceAll { format } => {
            let rows = reproduce::all_rows()?;
            match format {
                ReportFormat::Human => print!("{}", report::to_human(&rows)),
                ReportFormat::Json => println!("{}", report::to_json(&rows)),
                ReportFormat::Csv => print!("{}", report::to_csv(&rows)),
            }
            if rows.iter().any(|row| row.status == Status::Fail) {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
