//! Scenario runner for the point-interaction wave solvers.
//!
//! Verbs: `simulate` (semi-analytic path, CSV artifacts), `compare`
//! (semi-analytic vs finite-difference oracle with pass/fail thresholds),
//! `identities` (randomized operator-algebra self-checks).
//!
//! Exit codes: 0 success, 2 configuration error, 3 horizon violation,
//! 4 oracle instability, 5 threshold failure.

mod compare_cmd;
mod error;
mod output;
mod scenario;
mod simulate;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;
use pointwave::identities::run_identity_suite;
use scenario::Scenario;

#[derive(Parser)]
#[command(name = "pointwave", version, about = "1D wave equation with point interactions: semi-analytic solvers and an FDTD cross-check")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario semi-analytically and write CSV artifacts.
    Simulate {
        /// Scenario file (TOML).
        config: PathBuf,
        /// Output directory (overrides the scenario's `output_dir`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both paths and write a comparison report with pass/fail checks.
    Compare {
        /// Scenario file (TOML).
        config: PathBuf,
        /// Output directory (overrides the scenario's `output_dir`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the operator-algebra identities on randomized inputs.
    Identities {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, out } => {
            let scenario = load(&config)?;
            let out_dir = resolve_out_dir(&scenario, out)?;
            simulate::run(&scenario, &out_dir)
        }
        Command::Compare { config, out } => {
            let scenario = load(&config)?;
            let out_dir = resolve_out_dir(&scenario, out)?;
            compare_cmd::run(&scenario, &out_dir)
        }
        Command::Identities { seed, cases } => identities(seed, cases),
    }
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read {}: {e}", path.display()))
    })?;
    Scenario::parse(&text)
}

fn resolve_out_dir(scenario: &Scenario, flag: Option<PathBuf>) -> Result<PathBuf, CliError> {
    flag.or_else(|| scenario.output_dir.clone()).ok_or_else(|| {
        CliError::Config("output directory: pass --out or set output_dir".into())
    })
}

fn identities(seed: u64, cases: usize) -> Result<(), CliError> {
    if cases == 0 {
        return Err(CliError::Config("--cases must be at least 1".into()));
    }
    let report = run_identity_suite(seed, cases);
    for check in &report.checks {
        println!(
            "identity {:<28} max residual {:.3e} (tolerance {:.1e}) {}",
            check.name,
            check.max_residual,
            check.tolerance,
            if check.passed() { "PASS" } else { "FAIL" }
        );
    }
    if report.all_passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect();
        Err(CliError::Threshold(format!(
            "identities failed at seed {}: {}",
            report.seed,
            failed.join(", ")
        )))
    }
}
