//! `cvsteer`: evaluate, sweep and locate the critical angles of steering
//! criteria for two-mode Fock superpositions.

mod commands;
mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cvsteer::StateId;

use commands::CliError;
use config::{parse_criteria, ConfigError, Format, Overrides, RunConfig};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  invalid configuration (the message names the field)
  3  quadrature tolerance not met (eval only; see --allow-flagged)
  4  output could not be written
  5  a requested criterion has no sign change in range (critical)

Settings come from defaults, then --config FILE (key = value lines, # comments),
then command-line flags, each layer overriding the previous one.";

#[derive(Parser)]
#[command(name = "cvsteer", version, about, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate criteria at a single angle.
    Eval(RunArgs),
    /// Tabulate criteria over an angle grid (CSV header theta,i_reid,i_ent,i_chsh).
    Sweep(RunArgs),
    /// Locate the angles where criteria cross their bounds.
    Critical(RunArgs),
    /// Classify the angle range by which criteria detect nonlocality (JSON).
    Report(RunArgs),
}

#[derive(Args, Debug, Default)]
#[command(after_help = EXIT_CODES)]
struct RunArgs {
    /// State family: psi or psi-prime [default: psi]
    #[arg(long)]
    state: Option<StateId>,
    /// Comma-separated subset of reid,entropic,chsh [default: reid,entropic]
    #[arg(long)]
    criteria: Option<String>,
    /// Mixing angle for eval, in [0, π]
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Lower end of the angle range [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    theta_min: Option<f64>,
    /// Upper end of the angle range [default: π]
    #[arg(long, allow_negative_numbers = true)]
    theta_max: Option<f64>,
    /// Grid points, ends included [default: 315]
    #[arg(long)]
    steps: Option<usize>,
    /// Gauss-Hermite order [default: 64]
    #[arg(long)]
    gh_order: Option<usize>,
    /// Truncation half-width in oscillator lengths [default: 8]
    #[arg(long, visible_alias = "L")]
    half_width: Option<f64>,
    /// Absolute tolerance of adaptive integrals [default: 1e-10]
    #[arg(long)]
    panel_tol: Option<f64>,
    /// Maximum bisection depth of adaptive integrals [default: 40]
    #[arg(long)]
    max_depth: Option<u32>,
    /// Root bracket width in radians [default: 1e-6]
    #[arg(long)]
    root_tol: Option<f64>,
    /// Oscillator scale m·ω with ħ = 1 [default: 1]
    #[arg(long)]
    m_omega: Option<f64>,
    /// Output file [default: standard output; critical writes critical-<state>.<format>]
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// csv or json [default: csv; report is always json]
    #[arg(long)]
    format: Option<Format>,
    /// Key-value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Accept results whose quadrature missed its tolerance
    #[arg(long)]
    allow_flagged: bool,
}

impl RunArgs {
    fn overrides(&self) -> Result<Overrides, ConfigError> {
        Ok(Overrides {
            state: self.state,
            criteria: self.criteria.as_deref().map(parse_criteria).transpose()?,
            theta: self.theta,
            theta_min: self.theta_min,
            theta_max: self.theta_max,
            steps: self.steps,
            gh_order: self.gh_order,
            half_width: self.half_width,
            panel_tol: self.panel_tol,
            max_depth: self.max_depth,
            root_tol: self.root_tol,
            m_omega: self.m_omega,
            output: self.output.clone(),
            format: self.format,
            allow_flagged: self.allow_flagged.then_some(true),
        })
    }

    fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let file = match &self.config {
            Some(p) => Overrides::load(p)?,
            None => Overrides::default(),
        };
        RunConfig::resolve(self.overrides()?.over(file))
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let (args, cmd): (&RunArgs, fn(&RunConfig) -> commands::CliResult) = match &cli.command {
        Command::Eval(a) => (a, commands::eval),
        Command::Sweep(a) => (a, commands::sweep),
        Command::Critical(a) => (a, commands::critical),
        Command::Report(a) => (a, commands::report),
    };
    cmd(&args.resolve()?)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
