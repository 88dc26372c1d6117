//! `sgflow`: profiles, discharge rates and radial pressure fields of the
//! second-gradient cylindrical flows, emitted as plot-ready CSV/JSON.
//!
//! Exit codes: 0 ok, 2 configuration, 3 solver failure, 4 cross-check
//! violation, 5 material-constraint violation.

mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{RawConfig, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    CrossCheck(String),
    Constraint(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::CrossCheck(_) => 4,
            CliError::Constraint(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration: {m}"),
            CliError::Solver(m) => write!(f, "solver: {m}"),
            CliError::CrossCheck(m) => write!(f, "cross-check: {m}"),
            CliError::Constraint(m) => write!(f, "constraint: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sgflow",
    version,
    about = "Closed-form cylindrical flows of a second-gradient viscous fluid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a dimensionless velocity profile (sweep mode with --sweep)
    Profile(CommonArgs),
    /// Tabulate discharge rates against an independent quadrature
    Discharge(CommonArgs),
    /// Solve the rotating-flow radial pressure problem by both routes
    Pressure(CommonArgs),
    /// Check material constraints and the ellipticity indicator
    Validate(ValidateArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Flat `key = value` config file; command-line flags win
    #[arg(long)]
    config: Option<PathBuf>,
    /// `poiseuille` or `couette`
    #[arg(long)]
    flow: Option<String>,
    /// `strong` or `weak`
    #[arg(long)]
    bc: Option<String>,
    #[arg(long)]
    lambda0: Option<f64>,
    #[arg(long)]
    lambda1: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    #[arg(long)]
    lambda3: Option<f64>,
    #[arg(long)]
    lambda4: Option<f64>,
    /// Number of grid nodes
    #[arg(long)]
    grid_n: Option<usize>,
    /// Comma-separated lambda1 values for sweep mode
    #[arg(long)]
    sweep: Option<String>,
    /// Output directory (default: $SGFLOW_OUT_DIR, then `.`)
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Concurrent sweep entries
    #[arg(long)]
    jobs: Option<usize>,
    /// `csv` or `json`
    #[arg(long)]
    format: Option<String>,
}

impl CommonArgs {
    fn into_raw(self) -> Result<RawConfig, CliError> {
        let mut raw = match &self.config {
            Some(path) => RawConfig::from_file(path)?,
            None => RawConfig::default(),
        };
        let mut set_f64 = |key: &str, v: Option<f64>| {
            if let Some(v) = v {
                raw.set(key, format!("{v}"));
            }
        };
        set_f64("lambda0", self.lambda0);
        set_f64("lambda1", self.lambda1);
        set_f64("lambda2", self.lambda2);
        set_f64("lambda3", self.lambda3);
        set_f64("lambda4", self.lambda4);
        if let Some(v) = self.flow {
            raw.set("flow", v);
        }
        if let Some(v) = self.bc {
            raw.set("bc", v);
        }
        if let Some(v) = self.grid_n {
            raw.set("grid_n", v.to_string());
        }
        if let Some(v) = self.sweep {
            raw.set("sweep", v);
        }
        if let Some(v) = self.out_dir {
            raw.set("out_dir", v.display().to_string());
        }
        if let Some(v) = self.jobs {
            raw.set("jobs", v.to_string());
        }
        if let Some(v) = self.format {
            raw.set("format", v);
        }
        Ok(raw)
    }
}

#[derive(Args)]
struct ValidateArgs {
    /// Flat `key = value` config file; command-line flags win
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta3: Option<f64>,
    #[arg(long)]
    lambda0: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    #[arg(long)]
    lambda3: Option<f64>,
    #[arg(long)]
    lambda4: Option<f64>,
    /// Reference viscosity of the exponential pressure law
    #[arg(long, allow_negative_numbers = true)]
    barus_mu0: Option<f64>,
    /// Pressure coefficient of the exponential law
    #[arg(long, allow_negative_numbers = true)]
    barus_alpha: Option<f64>,
    /// Reference pressure of the exponential law
    #[arg(long, allow_negative_numbers = true)]
    barus_p0: Option<f64>,
    /// State pressure for the ellipticity indicator
    #[arg(long, allow_negative_numbers = true)]
    pressure: Option<f64>,
    /// Simple-shear rate for the ellipticity indicator
    #[arg(long, allow_negative_numbers = true)]
    shear_rate: Option<f64>,
}

impl ValidateArgs {
    fn into_raw(self) -> Result<RawConfig, CliError> {
        let mut raw = match &self.config {
            Some(path) => RawConfig::from_file(path)?,
            None => RawConfig::default(),
        };
        let mut set = |key: &str, v: Option<f64>| {
            if let Some(v) = v {
                raw.set(key, format!("{v}"));
            }
        };
        set("mu", self.mu);
        set("eta1", self.eta1);
        set("eta2", self.eta2);
        set("eta3", self.eta3);
        set("lambda0", self.lambda0);
        set("lambda2", self.lambda2);
        set("lambda3", self.lambda3);
        set("lambda4", self.lambda4);
        set("barus_mu0", self.barus_mu0);
        set("barus_alpha", self.barus_alpha);
        set("barus_p0", self.barus_p0);
        set("pressure", self.pressure);
        set("shear_rate", self.shear_rate);
        Ok(raw)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Profile(args) => {
            let cfg = RunConfig::from_raw(&args.into_raw()?)?;
            commands::cmd_profile(&cfg)
        }
        Command::Discharge(args) => {
            let cfg = RunConfig::from_raw(&args.into_raw()?)?;
            commands::cmd_discharge(&cfg)
        }
        Command::Pressure(args) => {
            let cfg = RunConfig::from_raw(&args.into_raw()?)?;
            commands::cmd_pressure(&cfg)
        }
        Command::Validate(args) => commands::cmd_validate(&args.into_raw()?),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}
