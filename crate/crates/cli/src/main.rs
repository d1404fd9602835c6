use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use dtvol_core::{Complex64, KnotParam, PhiForm, QuadRule};
use serde::Serialize;

mod cache;
mod check;
mod commands;
mod output;

use cache::Cache;

/// Riley polynomials, geometric representations and cone-manifold volumes of
/// the double twist knots J(k, 2n).
#[derive(Parser)]
#[command(name = "dtvol", version, about, long_about = None)]
struct Cli {
    /// Ignore and do not update the result cache
    #[arg(long, global = true)]
    no_cache: bool,

    /// More log output on stderr (-v info, -vv debug)
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Riley polynomial coefficients in z, or its values at given z
    Riley(RileyArgs),
    /// Roots in z of the Riley polynomial at a meridian eigenvalue
    Roots(RootsArgs),
    /// Cone-manifold volume at one angle, optionally with curve and branch CSVs
    Volume(VolumeArgs),
    /// Volume curve over an angle grid as CSV
    Curve(CurveArgs),
    /// Angle at which the geometric root becomes real
    AlphaK(AlphaKArgs),
    /// Run the cross-validation suites
    Check(CheckArgs),
}

#[derive(Args, Clone, Copy, Serialize)]
pub struct KnotArgs {
    /// Twists in the first box, k >= 2
    #[arg(short)]
    pub k: i64,
    /// Half the twists in the second box, n != 0 (the knot is J(k, 2n))
    #[arg(short, allow_negative_numbers = true)]
    pub n: i64,
}

impl KnotArgs {
    pub fn knot(&self) -> dtvol_core::Result<KnotParam> {
        KnotParam::new(self.k, self.n)
    }
}

#[derive(Clone, Copy, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormArg {
    #[default]
    Closed,
    Recursive,
}

impl From<FormArg> for PhiForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Closed => PhiForm::Closed,
            FormArg::Recursive => PhiForm::Recursive,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleArg {
    #[default]
    GaussKronrod,
    TanhSinh,
}

impl From<RuleArg> for QuadRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::GaussKronrod => QuadRule::GaussKronrod,
            RuleArg::TanhSinh => QuadRule::TanhSinh,
        }
    }
}

/// Parses `re,im` or a bare real number.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number {t:?}: {e}"))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}

#[derive(Args, Serialize)]
pub struct RileyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub knot: KnotArgs,
    /// Meridian eigenvalue as re,im
    #[arg(long = "M", value_parser = parse_complex, allow_hyphen_values = true)]
    pub m: Complex64,
    /// Print the coefficients in z, constant term first
    #[arg(long, conflicts_with = "z")]
    pub zpoly: bool,
    /// Evaluate at these z values (re,im; repeatable)
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "zpoly")]
    pub z: Vec<Complex64>,
    /// Construction of the polynomial
    #[arg(long, value_enum, default_value_t)]
    pub form: FormArg,
}

#[derive(Args, Serialize)]
pub struct RootsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub knot: KnotArgs,
    /// Meridian eigenvalue as re,im
    #[arg(long = "M", value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "omega")]
    pub m: Option<Complex64>,
    /// Use M = exp(i omega / 2) instead of --M
    #[arg(long, conflicts_with = "m")]
    pub omega: Option<f64>,
    /// Only roots satisfying the branch condition
    #[arg(long)]
    pub admissible: bool,
}

#[derive(Args, Clone, Copy, Serialize)]
pub struct NumericArgs {
    /// Absolute quadrature tolerance
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Quadrature rule
    #[arg(long, value_enum, default_value_t)]
    pub rule: RuleArg,
    /// Largest continuation step in omega
    #[arg(long, default_value_t = dtvol_core::solver::DEFAULT_STEP)]
    pub step: f64,
    /// Construction of the Riley polynomial
    #[arg(long, value_enum, default_value_t)]
    pub form: FormArg,
}

#[derive(Args, Serialize)]
pub struct VolumeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub knot: KnotArgs,
    /// Cone angle in [0, pi]
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub numeric: NumericArgs,
    /// Also write the volume curve from alpha to pi to this CSV
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Rows of the curve CSV
    #[arg(long, default_value_t = 50, requires = "curve")]
    pub samples: usize,
    /// Branch CSV path (default: the curve path with extension .branch.csv)
    #[arg(long, requires = "curve")]
    pub branch: Option<PathBuf>,
}

#[derive(Args, Serialize)]
pub struct CurveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub knot: KnotArgs,
    /// First angle
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    /// Last angle
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub to: f64,
    /// Number of equally spaced angles
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub numeric: NumericArgs,
    /// Write the CSV here instead of standard output
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
pub struct AlphaKArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub knot: KnotArgs,
}

#[derive(Args)]
pub struct CheckArgs {
    /// Algebraic cross-checks and volume symmetries (default)
    #[arg(long, conflicts_with = "full")]
    pub quick: bool,
    /// Also the volume oracles and the alpha_K sweep
    #[arg(long)]
    pub full: bool,
}

/// Process exit codes.
mod exit {
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NON_HYPERBOLIC: u8 = 3;
    pub const NUMERICAL: u8 = 4;
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<dtvol_core::Error>() {
        Some(e) if e.is_non_hyperbolic() => exit::NON_HYPERBOLIC,
        Some(e) if e.is_numerical() => exit::NUMERICAL,
        Some(_) => exit::USAGE,
        None => exit::FAILURE,
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::from_env()
    };
    let outputs = match cli.command {
        Command::Riley(args) => commands::riley(&args)?,
        Command::Roots(args) => commands::roots(&args)?,
        Command::Volume(args) => commands::volume(&args, &cache)?,
        Command::Curve(args) => commands::curve(&args, &cache)?,
        Command::AlphaK(args) => commands::alpha_k(&args, &cache)?,
        Command::Check(args) => return Ok(check::run(args.full)),
    };
    commands::emit(&outputs)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(exit::FAILURE),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
