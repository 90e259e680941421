//! zakspace — conjugate basis pairs from the coprime factorizations of a
//! dimension.
//!
//! Exit codes: 0 on success, 1 on validation errors, 2 when a conformance
//! run (`mub-check`, `localize`, `report`) detects a property violation.

mod commands;
mod output;
mod pgm;

use anyhow::{ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{Format, Outcome, RunConfig, DEFAULT_MAX_M};
use std::path::PathBuf;
use std::process::ExitCode;

/// Tolerance used when neither `--tol` nor `ZAKSPACE_TOL` is given.
const DEFAULT_TOL: f64 = 1e-10;
const TOL_ENV_VAR: &str = "ZAKSPACE_TOL";

#[derive(Parser)]
#[command(
    name = "zakspace",
    version,
    about = "Conjugate basis pairs from the coprime factorizations of a dimension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Common {
    /// Dimension of the space (positive integer)
    m: u64,

    /// Restrict to the conjugate pair containing this factor of m
    #[arg(long)]
    ma: Option<u64>,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write |amplitude| heatmap(s) of the localized state(s) to this
    /// binary-PGM path (multi-pair runs suffix the stem with _ma<N>)
    #[arg(long)]
    heatmap: Option<PathBuf>,

    /// Numeric tolerance for conformance checks
    /// (default: $ZAKSPACE_TOL, else 1e-10)
    #[arg(long)]
    tol: Option<f64>,

    /// Cap on m for the matrix-building commands
    #[arg(long)]
    max_m: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor m and count its conjugate pairs
    Factor(Common),
    /// List the canonical coprime bipartitions of m
    Pairs(Common),
    /// Verify mutual unbiasedness of the selected pairs
    #[command(name = "mub-check")]
    MubCheck(Common),
    /// Transform the flat state of each selected pair and report where it
    /// localizes
    Localize(Common),
    /// Combined document: factorization, pairs, unbiasedness, localization
    Report(Common),
}

fn resolve_tol(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV_VAR) {
            Ok(raw) => raw
                .trim()
                .parse::<f64>()
                .with_context(|| format!("{TOL_ENV_VAR} is not a number: {raw:?}"))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    ensure!(
        tol.is_finite() && tol > 0.0,
        "tolerance must be a positive finite number, got {tol}"
    );
    Ok(tol)
}

fn build_config(common: Common) -> Result<RunConfig> {
    Ok(RunConfig {
        m: common.m,
        selector: common.ma,
        format: match common.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        },
        heatmap: common.heatmap,
        tol: resolve_tol(common.tol)?,
        max_m: common.max_m.unwrap_or(DEFAULT_MAX_M),
        max_m_explicit: common.max_m.is_some(),
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Factor(c) => commands::cmd_factor(&build_config(c)?),
        Command::Pairs(c) => commands::cmd_pairs(&build_config(c)?),
        Command::MubCheck(c) => commands::cmd_mub_check(&build_config(c)?),
        Command::Localize(c) => commands::cmd_localize(&build_config(c)?),
        Command::Report(c) => commands::cmd_report(&build_config(c)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.rendered);
            if outcome.violation {
                eprintln!("property violation detected");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
