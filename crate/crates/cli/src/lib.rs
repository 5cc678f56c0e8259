//! Command-line front end for `retword`.
//!
//! [`run`] parses an argument vector, runs one subcommand and returns the
//! exit status together with the rendered output, so the binary and the
//! tests share one code path.

pub mod commands;
pub mod report;
pub mod subfile;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::{Report, Status};
pub use subfile::{parse_substitution, ParseError, SubstitutionFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Library(#[from] retword::Error),
}

impl CliError {
    /// 1 = a check failed, 2 = usage or parse error, 3 = budget exhausted.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Library(e) => match e {
                retword::Error::InvalidArgument(_) => 2,
                retword::Error::ResourceLimit { .. } | retword::Error::Cancelled => 3,
                _ => 1,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "retword", version, about = "Return words, return substitutions and exact spectra of primitive substitutions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of the fixed point.
    FixedPoint {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        length: usize,
    },
    /// Characteristic polynomial, eigenvalues and dominant eigenvalue.
    Spectrum {
        file: PathBuf,
        /// Analyse the matrix of the k-th power.
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Return words on a prefix, as observed in a finite prefix of the fixed point.
    ReturnWords {
        file: PathBuf,
        #[arg(long)]
        prefix: String,
        #[arg(long, default_value_t = 10_000)]
        length: usize,
    },
    /// Complete set of return words and the return substitution.
    ReturnSub {
        file: PathBuf,
        #[arg(long)]
        prefix: String,
    },
    /// Prefix of the derived sequence.
    Derived {
        file: PathBuf,
        #[arg(long)]
        prefix: String,
        #[arg(long, default_value_t = 50)]
        length: usize,
    },
    /// Derivation tower and its first repetition.
    Tower {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Morphisms λ, κ between two prefixes and the matrix decompositions.
    Relations {
        file: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Exponent of the matrix decomposition; defaults to the least admissible one.
        #[arg(long)]
        l: Option<u32>,
    },
    /// Synchronisation delay and injectivity on return words.
    Circularity {
        file: PathBuf,
        /// Prefix for a single injectivity check.
        #[arg(long)]
        prefix: Option<String>,
        #[arg(long, default_value_t = 30)]
        max_len: usize,
        #[arg(long, default_value_t = 50)]
        d_max: usize,
        #[arg(long, default_value_t = 10)]
        sample_len: usize,
        #[arg(long, default_value_t = 200)]
        max_prefix: usize,
    },
    /// Power coincidence and common powers of return substitutions for two
    /// substitutions with one fixed point.
    Shared {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Same-sequence gate and multiplicative dependence of dominant eigenvalues.
    Cobham {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value = "id")]
        coding_left: String,
        #[arg(long, default_value = "id")]
        coding_right: String,
        #[arg(long, default_value_t = 12)]
        bound: u32,
        #[arg(long, default_value_t = 10_000)]
        check_len: usize,
    },
    /// Substitutive presentation of a periodic sequence m^ω.
    Periodic {
        file: PathBuf,
        /// The period word m.
        #[arg(long)]
        period: String,
        #[arg(long, default_value_t = 1000)]
        check_len: usize,
    },
}

/// Exit status and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let started = Instant::now();
    match commands::execute(&cli.command) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Human => report.to_human(Some(started.elapsed().as_millis())),
            };
            Outcome {
                code: report.status().exit_code(),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
