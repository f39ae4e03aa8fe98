//! `wigmol`: tables of equilibria, normal modes, density-matrix kernels and
//! observables for trapped 1D chains, as CSV or JSON.
//!
//! Exit status is 0 on success, 2 for invalid arguments (including requests
//! that are undefined in the hard-core limit), 3 for numerical failure and
//! 1 for I/O errors.

// `!(x > 0.0)` is deliberate: it rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use wigmol_core::{Error, Interaction};

use args::{Cli, Command, Format};
use commands::Task;
use table::Table;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn for_system(e: Error, n: usize, i: Interaction) -> Self {
        match CliError::from(e) {
            CliError::Usage(m) => CliError::Usage(format!("N={n}, d={i}: {m}")),
            CliError::Numerical(m) => CliError::Numerical(format!("N={n}, d={i}: {m}")),
            other => other,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid arguments: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } | Error::DegenerateHessian(_) | Error::SingularBlock => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn emit(table: &Table, format: Format, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write(format, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            table.write(format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("WIGMOL_THREADS") {
        let threads: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::Usage(format!("WIGMOL_THREADS must be a positive integer, got {value:?}")))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| CliError::Io(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (common, task) = match cli.command {
        Command::Verify { format, output } => {
            let (table, all) = commands::verify()?;
            emit(&table, format.unwrap_or(Format::Csv), output.as_ref())?;
            if !all {
                eprintln!("verify: at least one check failed");
            }
            return Ok(all);
        }
        Command::Equilibrium { common, g, d_aux } => {
            let r = common.resolve()?;
            let task = Task::Equilibrium { g: g.or(r.config.g), d_aux: d_aux.or(r.config.d_aux) };
            (r, task)
        }
        Command::Modes { common } => (common.resolve()?, Task::Modes),
        Command::Kernel { common } => (common.resolve()?, Task::Kernel),
        Command::Spectrum { common } => (common.resolve()?, Task::Spectrum),
        Command::ScanK { common } => (common.resolve()?, Task::ScanK),
        Command::Density { common, g, d_aux, spacing, x } => {
            let r = common.resolve()?;
            let task = Task::density(&r, g, d_aux, spacing, x.as_deref())?;
            (r, task)
        }
        Command::Momentum { common, k } => {
            let r = common.resolve()?;
            let task = Task::momentum(&r, k.as_deref())?;
            (r, task)
        }
    };
    let table = thread_pool()?.install(|| commands::run(&task, &common))?;
    emit(&table, common.format, common.output.as_ref())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("wigmol: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
