// Negated comparisons like `!(x > 0)` are used on purpose in validation:
// they treat NaN as failing.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Chiral-oscillator simulation CLI.
//!
//! Subcommands: `evolve`, `zeeman`, `spectrum`, `solder`, `invariants`,
//! `duality`. Exit codes: 0 ok, 1 property-check failure, 2 config error,
//! 3 numerical failure, 4 Ermakov singularity (partial output retained).

mod commands;
mod config;
mod fmtnum;
mod output;

use clap::{Args, Parser, Subcommand};
use commands::CliError;
use config::Config;
use output::OutputFormat;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "chiralosc", version, about = "Chiral-oscillator simulations and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted (evolve requires a path).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Table output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Override the integrator relative tolerance (absolute = tol/100).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one chiral oscillator; write `t,x1,x2` plus a drift sidecar.
    Evolve(CommonArgs),
    /// Zeeman levels (constant B) or the Ermakov/phase table (tabulated B).
    Zeeman(CommonArgs),
    /// Diagonalize the charged oscillator in the truncated chiral Fock basis.
    Spectrum(CommonArgs),
    /// Soldering property checks (JSON report).
    Solder(CommonArgs),
    /// Invariant-constancy checks (JSON report).
    Invariants(CommonArgs),
    /// Duality-symmetry checks (JSON report).
    Duality(CommonArgs),
}

fn load_config(args: &CommonArgs) -> Result<Config, CliError> {
    match &args.config {
        None => Ok(Config::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            Config::from_toml(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Evolve(a) => {
            let cfg = load_config(&a)?;
            commands::cmd_evolve(&cfg, a.out.as_deref(), a.format, a.tol)
        }
        Command::Zeeman(a) => {
            let cfg = load_config(&a)?;
            commands::cmd_zeeman(&cfg, a.out.as_deref(), a.format, a.tol)
        }
        Command::Spectrum(a) => {
            let cfg = load_config(&a)?;
            commands::cmd_spectrum(&cfg, a.out.as_deref(), a.format)
        }
        Command::Solder(a) => {
            let cfg = load_config(&a)?;
            commands::cmd_solder(&cfg, a.out.as_deref(), a.tol)
        }
        Command::Invariants(a) => {
            let cfg = load_config(&a)?;
            commands::cmd_invariants(&cfg, a.out.as_deref(), a.tol)
        }
        Command::Duality(a) => {
            let cfg = load_config(&a)?;
            commands::cmd_duality(&cfg, a.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
