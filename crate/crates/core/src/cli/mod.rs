//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure or numerical error,
//! 2 invalid arguments or configuration. Output is written only after the
//! whole table has been computed, so a failed run never leaves a partial file.

pub mod commands;
pub mod config;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::branch::ProblemKind;
use crate::error::Error;
use crate::exec::Execution;

pub use config::{Format, RunConfig, Spacing, TauGrid};
pub use table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Plus,
    Minus,
}

impl From<KindArg> for ProblemKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Plus => ProblemKind::PlusExp,
            KindArg::Minus => ProblemKind::MinusExp,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gelfand", version, about = "Exact spectra of the linearized 1-D Gel'fand problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solution curve table: tau, lambda, alpha, dlambda/dtau.
    Branch(CommonArgs),
    /// Exact eigenvalues over the tau grid.
    Spectrum(CommonArgs),
    /// Samples of one eigenfunction.
    Eigenfunction {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Check the closed forms against the finite-difference oracle and the
    /// known limits.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
        inject_mu_offset: f64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Plus)]
    pub kind: KindArg,
    #[arg(long)]
    pub tau_min: Option<f64>,
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long)]
    pub tau_count: Option<usize>,
    #[arg(long, value_enum)]
    pub tau_spacing: Option<Spacing>,
    #[arg(long, default_value_t = 1)]
    pub j_min: usize,
    #[arg(long, default_value_t = 5)]
    pub j_max: usize,
    #[arg(long, default_value_t = 4000)]
    pub oracle_n: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

impl CommonArgs {
    pub fn to_config(&self, command: &'static str) -> RunConfig {
        let kind = ProblemKind::from(self.kind);
        let d = TauGrid::default_for(kind);
        RunConfig {
            command,
            kind,
            tau_grid: TauGrid {
                min: self.tau_min.unwrap_or(d.min),
                max: self.tau_max.unwrap_or(d.max),
                count: self.tau_count.unwrap_or(d.count),
                spacing: self.tau_spacing.unwrap_or(d.spacing),
            },
            j_lo: self.j_min,
            j_hi: self.j_max,
            oracle_n: self.oracle_n,
            tol: self.tol,
            format: self.format,
            out: self.out.clone(),
        }
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Domain(_) | Error::Precondition(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn emit(cfg: &RunConfig, table: &Table) -> Result<(), String> {
    let bytes = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(cfg),
    }
    .map_err(|e| e.to_string())?;
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (cfg, outcome) = match &cli.command {
        Command::Branch(a) => {
            let cfg = a.to_config("branch");
            let r = commands::cmd_branch(&cfg, a.exec()).map(|t| (t, true));
            (cfg, r)
        }
        Command::Spectrum(a) => {
            let cfg = a.to_config("spectrum");
            let r = commands::cmd_spectrum(&cfg, a.exec()).map(|t| (t, true));
            (cfg, r)
        }
        Command::Eigenfunction { common, j, tau, samples } => {
            let cfg = common.to_config("eigenfunction");
            let r = commands::cmd_eigenfunction(cfg.kind, *j, *tau, *samples).map(|t| (t, true));
            (cfg, r)
        }
        Command::Verify { common, inject_mu_offset } => {
            let cfg = common.to_config("verify");
            let r = commands::cmd_verify(&cfg, *inject_mu_offset, common.exec());
            (cfg, r)
        }
    };
    match outcome {
        Ok((table, passed)) => {
            if let Err(msg) = emit(&cfg, &table) {
                eprintln!("error: {msg}");
                return EXIT_FAIL;
            }
            if passed {
                EXIT_OK
            } else {
                eprintln!("verification failed");
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
