//! Command-line front end: transverse scans, photon-number sweeps,
//! verification reports and Monte Carlo runs, written as CSV or JSON.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
mod error;
pub mod format;
pub mod records;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

use cli::{Cli, Command, OutputArgs};
pub use error::{CliError, Result};
use records::{render, Format};

fn write_output(out: &OutputArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn dispatch(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Scan(a) => {
            let rows = commands::scan(a)?;
            write_output(&a.output, &render(&rows, a.output.format.unwrap_or_default()))
        }
        Command::SweepNbar(a) => {
            let rows = commands::sweep_nbar(a)?;
            write_output(&a.output, &render(&rows, a.output.format.unwrap_or_default()))
        }
        Command::Mc(a) => {
            let rows = commands::mc(a)?;
            write_output(&a.output, &render(&rows, a.output.format.unwrap_or_default()))
        }
        Command::Verify(a) => {
            let report = commands::verify(a)?;
            let text = match a.output.format.unwrap_or(Format::Json) {
                Format::Json => commands::render_verify_json(&report),
                Format::Csv => commands::render_verify_csv(&report),
            };
            write_output(&a.output, &text)?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Verification("one or more checks failed".into()))
            }
        }
    }
}

fn check(path: &Path) -> Result<()> {
    let rows = commands::check(path)?;
    eprintln!("{}: {rows} rows ok", path.display());
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = config::expand_args(args.into_iter().map(Into::into).collect())?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return Ok(());
        }
        Err(e) => return Err(CliError::InvalidArgs(e.render().to_string())),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.map_or(0, usize::from))
        .build()
        .map_err(|e| CliError::InvalidArgs(e.to_string()))?;
    pool.install(|| match (&cli.check, &cli.command) {
        (Some(_), Some(_)) => Err(CliError::InvalidArgs("--check does not take a subcommand".into())),
        (Some(path), None) => check(path),
        (None, Some(cmd)) => dispatch(cmd),
        (None, None) => Err(CliError::InvalidArgs(
            "a subcommand or --check is required; see --help".into(),
        )),
    })
}

/// Runs and maps the outcome to a process exit code, reporting errors on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match run(args) {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                CliError::InvalidArgs(msg) if msg.starts_with("error:") => eprint!("{msg}"),
                _ => eprintln!("hbt: {e}"),
            }
            e.exit_code()
        }
    }
}
