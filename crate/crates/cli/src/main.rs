//! `spwidth`: batch verification front end.
//!
//! Exit status: 0 when every assertion holds, 1 on an assertion failure,
//! 2 on a usage or config error.

mod commands;
mod config;
mod error;
mod report;
mod selectors;
mod suites;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spwidth_core::ModulusGrid;

use crate::commands::{JacksonCommand, WidthsCommand};
use crate::config::{Format, Suite, SuiteConfig};
use crate::error::{CliError, Result};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "spwidth", version, about = "Jackson constants and widths in S^p: suites and one-shot checks")]
struct Cli {
    /// Suite configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Suite to run: a6101, sharpness, jackson-fuzz, widths-certify, modulus-oracle.
    #[arg(long, global = true)]
    suite: Option<Suite>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report path (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Leave the generation time out of suite reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Points of the uniform shift grid for moduli.
    #[arg(long, global = true, default_value_t = 4096)]
    grid_points: usize,
    /// Golden-section iterations after the grid search.
    #[arg(long, global = true, default_value_t = 40)]
    refine_iters: usize,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Jackson(JacksonCommand),
    #[command(subcommand)]
    Widths(WidthsCommand),
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run_suite(cli: &Cli, grid: &ModulusGrid) -> Result<bool> {
    let mut cfg = match (&cli.config, cli.suite) {
        (Some(path), suite) => {
            let cfg = SuiteConfig::load(path)?;
            if suite.is_some_and(|s| s != cfg.suite) {
                return Err(CliError::usage(format!(
                    "--suite {} conflicts with suite {} in {}",
                    suite.map_or("", Suite::name),
                    cfg.suite.name(),
                    path.display()
                )));
            }
            cfg
        }
        (None, Some(suite)) => SuiteConfig::defaults(suite),
        (None, None) => return Err(CliError::usage("nothing to do: pass --config, --suite or a subcommand (see --help)")),
    };
    cfg.seed = cli.seed.unwrap_or(cfg.seed);
    cfg.format = cli.format.unwrap_or(cfg.format);
    if cli.out.is_some() {
        cfg.out.clone_from(&cli.out);
    }
    let rows = suites::run(&cfg, grid)?;
    let report = Report::new(cfg.suite.name(), cfg.seed, rows, !cli.no_timestamp);
    let mut out = output(cfg.out.as_ref())?;
    report.write(cfg.format, &mut out)?;
    out.flush().map_err(|e| CliError::io(cfg.out.clone().unwrap_or_else(|| "<stdout>".into()), e))?;
    Ok(report.passed)
}

fn run(cli: &Cli) -> Result<bool> {
    let grid = ModulusGrid::new(cli.grid_points, cli.refine_iters)?;
    let Some(command) = &cli.command else {
        return run_suite(cli, &grid);
    };
    if cli.config.is_some() || cli.suite.is_some() {
        return Err(CliError::usage("--config and --suite run suites and do not combine with a subcommand"));
    }
    if cli.format == Some(Format::Csv) {
        return Err(CliError::usage("subcommands write JSON only"));
    }
    let outcome = match command {
        Command::Jackson(cmd) => commands::jackson(cmd, &grid)?,
        Command::Widths(cmd) => commands::widths(cmd, &grid, cli.seed.unwrap_or(0))?,
    };
    let mut out = output(cli.out.as_ref())?;
    serde_json::to_writer_pretty(&mut out, &outcome.value)?;
    writeln!(out).and_then(|_| out.flush()).map_err(|e| CliError::io("<output>", e))?;
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
