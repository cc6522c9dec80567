//! `lfvdw`: potential scans, asymptotic coefficients and on-interface
//! estimates for an atom in a planar magnetodielectric stack.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 numerical fault.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lfvdw_cli::commands::{self, destinations, write_text};
use lfvdw_cli::{CliError, CliResult, Format, Outcome, Overrides, ScenarioConfig};

#[derive(Parser)]
#[command(name = "lfvdw", version, about = "Local-field corrected van der Waals potentials in layered media")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan U1, U2, total potential and force along the configured axis.
    Potential(Common),
    /// Retarded and non-retarded coefficients of a two-medium interface.
    Coefficients(Common),
    /// On-interface potential estimates.
    Interface(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Scenario config file (TOML).
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in figure preset: fig1 ... fig5.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output file, or directory when the input yields several outputs.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Drop the local-field factor [3eps/(2eps+1)]^2.
    #[arg(long)]
    no_local_field: bool,
    /// Relative quadrature tolerance.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Evaluate points closer to an interface than the cavity allows.
    #[arg(long)]
    override_distance_guard: bool,
}

fn run(cli: Cli) -> CliResult<()> {
    let (common, eval): (Common, fn(&ScenarioConfig) -> CliResult<Outcome>) = match cli.command {
        Command::Potential(c) => (c, commands::potential),
        Command::Coefficients(c) => (c, commands::coefficients),
        Command::Interface(c) => (c, commands::interface),
    };
    let overrides = Overrides {
        no_local_field: common.no_local_field,
        rel_tol: common.rel_tol,
        override_distance_guard: common.override_distance_guard,
    };
    let jobs = commands::load_jobs(common.config.as_deref(), common.preset.as_deref(), &overrides)?;
    let format = match common.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => jobs[0].config.output.format.unwrap_or_default(),
    };
    let targets = destinations(&jobs, common.out.as_deref(), format)?;
    let mut faults = Vec::new();
    for (job, target) in jobs.iter().zip(targets) {
        let outcome = eval(&job.config).map_err(|e| match e {
            CliError::Numerical(m) => CliError::Numerical(format!("{}: {m}", job.name)),
            other => other,
        })?;
        write_text(target.as_deref(), &outcome.document.render(format)?)?;
        faults.extend(outcome.faults.into_iter().map(|f| format!("{}: {f}", job.name)));
    }
    if faults.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(faults.join("\n")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lfvdw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
