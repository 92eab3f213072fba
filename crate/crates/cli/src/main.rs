//! `opsf`: command-line driver for the verification lab.
//!
//! Exit codes: 0 all checks passed, 1 exact mismatch (strict mode) or a
//! witnessed counterexample, 2 usage or configuration error, 3 numerical
//! failure (no convergence, tolerance not reached).

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;

use opsf_core::acceptance::DEFAULT_SEED;

use crate::output::Status;

#[derive(Debug, Parser)]
#[command(
    name = "opsf",
    version,
    about = "Exact and numerical checks of special-function identities"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GlobalArgs {
    /// `key = value` file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write the subcommand's table as CSV here (`-` for stdout).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Record wall time in the report header (reports then differ run to run).
    #[arg(long, global = true)]
    wall_time: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
enum Command {
    /// Schur's inequality: exact SOS identity at n = 2 plus sampled checks.
    #[command(args_override_self = true)]
    Schur(commands::SchurArgs),
    /// Printed connection/linearization formula against the exact oracle.
    #[command(args_override_self = true)]
    IdentityCheck(commands::IdentityArgs),
    /// Connection coefficients of one family in another, by exact expansion.
    #[command(args_override_self = true)]
    Connect(commands::ConnectArgs),
    /// Linearization coefficients of a product, by exact expansion.
    #[command(args_override_self = true)]
    Linearize(commands::LinearizeArgs),
    /// Double sums: closed form, recurrences, Kampé de Fériet, nonterminating.
    #[command(args_override_self = true)]
    Multisum(commands::MultisumArgs),
    /// Extreme zeros of truncated Jacobi matrices across sizes.
    #[command(args_override_self = true)]
    Spectra(commands::SpectraArgs),
    /// Spectra of symmetric ±1 matrices, exhaustive or Monte Carlo.
    #[command(args_override_self = true)]
    Bernoulli(commands::BernoulliArgs),
    /// Sign scan of the Gegenbauer positivity integrals.
    #[command(args_override_self = true)]
    Positivity(commands::PositivityArgs),
    /// Polynomials behind the MZV identities and truncated MZV sums.
    #[command(args_override_self = true)]
    Mzv(commands::MzvArgs),
    /// Zeros of P_n from the recurrence via the Jacobi matrix.
    #[command(args_override_self = true)]
    Zeros(commands::ZerosArgs),
    /// The full acceptance suite.
    #[command(args_override_self = true)]
    All(commands::AllArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Schur(_) => "schur",
            Self::IdentityCheck(_) => "identity-check",
            Self::Connect(_) => "connect",
            Self::Linearize(_) => "linearize",
            Self::Multisum(_) => "multisum",
            Self::Spectra(_) => "spectra",
            Self::Bernoulli(_) => "bernoulli",
            Self::Positivity(_) => "positivity",
            Self::Mzv(_) => "mzv",
            Self::Zeros(_) => "zeros",
            Self::All(_) => "all",
        }
    }
}

/// Everything that determines a report; serialized into its header.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    seed: u64,
    #[serde(flatten)]
    command: Command,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Output(String),
}

impl From<opsf_core::Error> for CliError {
    fn from(e: opsf_core::Error) -> Self {
        if e.is_numerical() {
            Self::Numerical(e.to_string())
        } else {
            Self::Usage(e.to_string())
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Output(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

/// `--config` value and subcommand name, found without a full parse so that
/// the file can supply required flags.
fn prescan(cmd: &clap::Command, argv: &[OsString]) -> (Option<PathBuf>, Option<String>) {
    let mut config = None;
    let mut sub = None;
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            config = it.next().map(PathBuf::from);
        } else if let Some(v) = s.strip_prefix("--config=") {
            config = Some(PathBuf::from(v));
        } else if sub.is_none() && cmd.find_subcommand(s.as_ref()).is_some() {
            sub = Some(s.into_owned());
        }
    }
    (config, sub)
}

fn parse(argv: Vec<OsString>) -> Result<Cli, clap::Error> {
    let cmd = Cli::command();
    let argv = match prescan(&cmd, &argv) {
        (Some(path), Some(sub)) => config::merge(&cmd, &argv, &sub, &path)
            .map_err(|e| cmd.clone().error(clap::error::ErrorKind::InvalidValue, e.0))?,
        _ => argv,
    };
    let matches = cmd.try_get_matches_from(argv)?;
    Cli::from_arg_matches(&matches)
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("OPSF_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "OPSF_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<Status, CliError> {
    init_threads()?;
    let start = Instant::now();
    let outcome = commands::dispatch(&cli.command, cli.global.seed, cli.global.wall_time)?;
    let wall = cli.global.wall_time.then(|| start.elapsed());
    let to_stdout = |p: &Option<PathBuf>| p.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if to_stdout(&cli.global.json) || to_stdout(&cli.global.csv) {
        eprintln!("{}", outcome.summary);
    } else {
        println!("{}", outcome.summary);
    }
    if let Some(path) = &cli.global.csv {
        let table = outcome
            .csv
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("{} has no CSV table", cli.command.name())))?;
        output::write_csv(path, table).map_err(|e| CliError::Output(e.to_string()))?;
    }
    if let Some(path) = &cli.global.json {
        let config = RunConfig {
            seed: cli.global.seed,
            command: cli.command.clone(),
        };
        let doc = output::document(&config, &outcome, wall);
        output::write_json(path, &doc).map_err(|e| CliError::Output(e.to_string()))?;
    } else if let Some(w) = wall {
        println!("wall time: {:.3}s", w.as_secs_f64());
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = match parse(std::env::args_os().collect()) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Passed) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            let (CliError::Usage(m) | CliError::Numerical(m) | CliError::Output(m)) = &e;
            eprintln!("error: {m}");
            ExitCode::from(e.code())
        }
    }
}
