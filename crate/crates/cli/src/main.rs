//! Command-line front end for the isewsim simulator.
//!
//! Three subcommands cover the working cycle:
//!
//! * `run` — simulate one or more scenarios against a calibration bundle
//!   and write their output tables plus a binary-faithful `.traj` file
//!   per scenario.
//! * `compare` — build cross-scenario comparison and ranking tables from
//!   previously written `.traj` files (the first file is the baseline).
//! * `validate` — load a calibration bundle and scenario files, report
//!   what checks out, and exit without simulating.
//!
//! Diagnostics go to stderr; the paths of written files go to stdout.
//! Exit codes: `0` success, `2` input/configuration error, `3`
//! simulation error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isewsim::config::Horizon;
use isewsim::report::{self, OutputFormat};
use isewsim::{run_scenario, Calibration, ModelError, ScenarioSpec};

#[derive(Parser)]
#[command(
    name = "isewsim",
    version,
    about = "Deterministic social-ecological macro simulator: ISEW/IAEW accounting and doughnut reporting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate scenarios and write their output tables.
    Run(RunArgs),
    /// Compare saved trajectories; the first file is the baseline.
    Compare(CompareArgs),
    /// Check a calibration bundle and scenario files without simulating.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Calibration bundle directory.
    #[arg(long, value_name = "DIR")]
    calibration: PathBuf,
    /// Scenario file; repeat the flag to run several scenarios.
    #[arg(long = "scenario", value_name = "FILE", required = true)]
    scenarios: Vec<PathBuf>,
    /// Directory the output tables are written into.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Output table format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Override the scenario horizon, e.g. 2020:2050.
    #[arg(long, value_name = "START:END", value_parser = parse_years)]
    years: Option<Horizon>,
}

#[derive(Args)]
struct CompareArgs {
    /// Saved .traj files; at least two, the first is the baseline.
    #[arg(value_name = "TRAJ", num_args = 2..)]
    trajectories: Vec<PathBuf>,
    /// Directory the comparison tables are written into.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Output table format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ValidateArgs {
    /// Calibration bundle directory.
    #[arg(long, value_name = "DIR")]
    calibration: PathBuf,
    /// Scenario files to check (optional, repeatable).
    #[arg(long = "scenario", value_name = "FILE")]
    scenarios: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

/// Parses a `START:END` year range; range semantics are checked later by
/// scenario validation, so this only requires two well-formed integers.
fn parse_years(raw: &str) -> Result<Horizon, String> {
    let (start, end) = raw
        .split_once(':')
        .ok_or_else(|| format!("expected START:END, got '{raw}'"))?;
    let start_year = start
        .trim()
        .parse::<i32>()
        .map_err(|e| format!("bad start year '{start}': {e}"))?;
    let end_year = end
        .trim()
        .parse::<i32>()
        .map_err(|e| format!("bad end year '{end}': {e}"))?;
    Ok(Horizon { start_year, end_year })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<(), ModelError> {
    let calibration = Calibration::load(&args.calibration)?;
    eprintln!(
        "loaded calibration {} (fingerprint {})",
        args.calibration.display(),
        &calibration.fingerprint()[..12]
    );
    for path in &args.scenarios {
        let mut spec = ScenarioSpec::load(path)?;
        if let Some(years) = args.years {
            spec.horizon = years;
            spec.validate()?;
        }
        let trajectory = run_scenario(&calibration, &spec)?;
        eprintln!(
            "scenario '{}': simulated {}..={}",
            trajectory.scenario, trajectory.start_year, trajectory.end_year
        );
        for written in report::write_outputs(&args.out, &trajectory, args.format.into())? {
            println!("{}", written.display());
        }
    }
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), ModelError> {
    let mut trajectories = Vec::with_capacity(args.trajectories.len());
    for path in &args.trajectories {
        trajectories.push(report::load_trajectory(path)?);
    }
    eprintln!(
        "comparing {} trajectories against baseline '{}'",
        trajectories.len(),
        trajectories[0].scenario
    );
    for written in report::write_comparison(&args.out, &trajectories, args.format.into())? {
        println!("{}", written.display());
    }
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<(), ModelError> {
    let calibration = Calibration::load(&args.calibration)?;
    println!(
        "calibration {}: ok (fingerprint {})",
        args.calibration.display(),
        calibration.fingerprint()
    );
    for path in &args.scenarios {
        let spec = ScenarioSpec::load(path)?;
        let mut levers = Vec::new();
        if spec.carbon_tax.is_some() {
            levers.push("carbon_tax");
        }
        if spec.redistribution.is_some() {
            levers.push("redistribution");
        }
        if spec.wtr.is_some() {
            levers.push("wtr");
        }
        let levers = if levers.is_empty() { "none".to_string() } else { levers.join("+") };
        println!(
            "scenario '{}' ({}): ok, horizon {}..={}, levers {}",
            spec.name,
            path.display(),
            spec.horizon.start_year,
            spec.horizon.end_year,
            levers
        );
    }
    Ok(())
}
