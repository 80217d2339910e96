//! Batch driver for quasi-exactly solvable spectra: spectra, formula audits, limit scans,
//! finite-difference oracles and plot-ready samples, written as JSON or CSV.
//!
//! Exit codes: 0 success, 1 rejected arguments or input, 2 numerical failure, 3 strict audit
//! mismatch. Arguments are validated in full before any computation, and output files are
//! written only once everything has been computed.

#![warn(missing_docs)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod json;
pub mod potfile;
pub mod report;

use std::io::Write;
use std::path::Path;

use args::Cli;
use config::RunConfig;
use error::{CliError, EXIT_OK, EXIT_STRICT};

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

/// Runs a parsed command line and returns the exit status.
pub fn execute(cli: &Cli) -> Result<u8, CliError> {
    let (kind, args) = cli.command.split();
    let cfg = RunConfig::from_args(kind, args)?;
    let out = commands::run(&cfg)?;
    if let (Some(path), Some(curves)) = (cfg.curves_path(), &out.curves) {
        write_file(&path, curves)?;
    }
    match &cfg.out {
        Some(path) => write_file(path, &out.text)?,
        None => std::io::stdout()
            .write_all(out.text.as_bytes())
            .map_err(|source| CliError::Write { path: "standard output".into(), source })?,
    }
    if cfg.strict && !out.strict_failures.is_empty() {
        eprintln!("qes: strict audit: {} formula(s) rejected: {}", out.strict_failures.len(), out.strict_failures.join(", "));
        return Ok(EXIT_STRICT);
    }
    Ok(EXIT_OK)
}
