use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spincs::report::{to_json, write_csv, write_file, TRAJECTORY_COLUMNS};
use spincs::sweep::{thread_cap, SWEEP_COLUMNS};
use spincs::{run_checks, CheckLevel, CliError, CliResult, Prepared, ScenarioConfig, SweepParameter, SweepSpec};

#[derive(Parser)]
#[command(name = "spincs", version, about = "Spin coherent-state phases: scenario runs, sweeps and invariant checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one scenario and report its phases.
    Run { config: PathBuf },
    /// Repeat a scenario over a range of one numeric parameter.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        count: usize,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in invariant suite.
    Check {
        #[arg(long)]
        full: bool,
        /// JSON destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(path: Option<&PathBuf>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => write_file(p, bytes),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn execute(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Run { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            let prepared = Prepared::new(&cfg)?;
            let (report, traj) = prepared.execute()?;
            if let Some(path) = &cfg.outputs.trajectory {
                let mut buf = Vec::new();
                write_csv(&mut buf, &TRAJECTORY_COLUMNS, &prepared.rows(&traj))?;
                write_file(path, &buf)?;
            }
            emit(cfg.outputs.report.as_ref(), to_json(&report)?.as_bytes())?;
            Ok(report.passed)
        }
        Command::Sweep { config, param, from, to, count, output } => {
            let parameter: SweepParameter = param.parse()?;
            let cfg = ScenarioConfig::load(&config)?;
            let rows = spincs::sweep(&cfg, &SweepSpec { parameter, from, to, count }, thread_cap()?)?;
            let mut buf = Vec::new();
            write_csv(&mut buf, &SWEEP_COLUMNS, &rows)?;
            emit(output.as_ref(), &buf)?;
            Ok(true)
        }
        Command::Check { full, output } => {
            let report = run_checks(if full { CheckLevel::Full } else { CheckLevel::Fast })?;
            emit(output.as_ref(), to_json(&report)?.as_bytes())?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(CliError::EXIT_TOLERANCE as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
