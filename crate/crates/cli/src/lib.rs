//! Command-line front end: each subcommand reads a JSON config and writes a
//! CSV table.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use thiserror::Error;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "COLLAPSE_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "collapse-lab", version, about = "Metric transformations and collapse experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Io {
    /// JSON configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Only log errors.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Warp and its circle-quotient transform: rho,f,f_transformed.
    Transform(Io),
    /// Gauss curvature of a (possibly transformed) warp: rho,K.
    Curvature(Io),
    /// Numerical soliton warp with potential and residuals.
    Soliton(Io),
    /// Quotient metric on a frame transverse to a subspace.
    Quotient(Io),
    /// Hopf-map distortion scan over target sphere radii.
    Berger(Io),
    /// Distortion of Z_p quotients against the transformed surface.
    Collapse(Io),
}

impl Command {
    pub fn io(&self) -> &Io {
        match self {
            Self::Transform(io)
            | Self::Curvature(io)
            | Self::Soliton(io)
            | Self::Quotient(io)
            | Self::Berger(io)
            | Self::Collapse(io) => io,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Domain(#[from] collapse_lab::Error),
}

impl CliError {
    /// 2 for unreadable or invalid configs, 1 for failures while computing
    /// or writing.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Read { .. } | Self::Parse { .. } => 2,
            Self::Domain(collapse_lab::Error::InvalidConfig(_)) => 2,
            Self::Write { .. } | Self::Domain(_) => 1,
        }
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

/// Runs a subcommand and returns the CSV it produces.
pub fn execute(command: &Command) -> Result<String, CliError> {
    let path = &command.io().config;
    let csv = match command {
        Command::Transform(_) => commands::transform(&load(path)?)?,
        Command::Curvature(_) => commands::curvature(&load(path)?)?,
        Command::Soliton(_) => commands::soliton(&load(path)?)?,
        Command::Quotient(_) => commands::quotient(&load(path)?)?,
        Command::Berger(_) => commands::berger(&load(path)?)?,
        Command::Collapse(_) => commands::collapse(&load(path)?)?,
    };
    Ok(csv)
}

fn init_logging(quiet: bool) {
    let level = if quiet {
        log::LevelFilter::Error
    } else {
        log::LevelFilter::Info
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_env("COLLAPSE_LAB_LOG")
        .format_timestamp(None)
        .try_init();
}

fn init_threads() {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
                log::debug!("thread pool already initialised");
            }
        }
        _ => log::warn!("ignoring {THREADS_ENV}={value:?}: expected a positive integer"),
    }
}

/// Parses arguments, runs the subcommand and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let io = cli.command.io().clone();
    init_logging(io.quiet);
    init_threads();
    let result = execute(&cli.command).and_then(|csv| match &io.out {
        Some(path) => fs::write(path, csv).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => io::stdout()
            .lock()
            .write_all(csv.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
