//! Command-line front end for `levytail`.
//!
//! Each subcommand produces a [`report::Report`] holding the command line, a
//! timestamp, a results tree and any warnings. Exit codes: 0 success, 1 a requested
//! check failed, 2 I/O error, 3 unusable input data, 4 invalid parameters.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;

use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliError;
use crate::report::Report;

/// Parses `argv`, runs the subcommand, prints to stdout and stderr, and returns
/// the process exit code.
pub fn run(argv: Vec<String>) -> u8 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 4 } else { 0 };
        }
    };
    match execute(&cli, argv) {
        Ok(passed) => {
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("levytail: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, argv: Vec<String>) -> Result<bool, CliError> {
    let outcome = match &cli.command {
        Command::Hurst(a) => commands::hurst(a)?,
        Command::Boxdim(a) => commands::boxdim(a)?,
        Command::Table(a) => commands::table(a)?,
        Command::Check(a) => commands::check(a)?,
        Command::Simulate(a) => {
            // --output names the series file, so the report always goes to stdout
            let outcome = commands::simulate(a, cli.output.as_deref())?;
            let report = Report::new(argv, outcome.results, outcome.warnings);
            print_stdout(&report.render(cli.format)?)?;
            return Ok(outcome.passed);
        }
    };
    for w in &outcome.warnings {
        log::warn!("{w}");
    }
    let report = Report::new(argv, outcome.results, outcome.warnings);
    let text = report.render(cli.format)?;
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            print_stdout(&outcome.summary)?;
        }
        None => print_stdout(&text)?,
    }
    Ok(outcome.passed)
}

fn print_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}
