//! Command-line driver: argument model, dispatch and the exit-code contract.
//!
//! Exit codes: 0 on success, 1 on usage / input / IO errors, 2 when a
//! verification fails (a syzygy residual is nonzero or an internal identity
//! check trips).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quantic_core::covariants::CovariantName;
use quantic_core::flow::{integrate, FlowConfig, Method};
use quantic_core::io::{
    classification_to_json, covariants_to_json, flow_summary_to_json, parse_quantic,
    syzygies_to_json, write_trajectory_csv,
};
use quantic_core::report::run_report;
use quantic_core::sampling::DEFAULT_SEED;
use quantic_core::weierstrass::classify;
use quantic_core::{algebra::parse_rational, BinaryQuantic, CovariantSet, Error};
use serde_json::Value;

/// Environment variable that overrides the default seed.
pub const SEED_ENV: &str = "QH_SEED";

#[derive(Debug, Parser)]
#[command(name = "quantic", version, about = "Covariants, syzygies and Hamilton flows of binary quantics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the normalized covariants H, G, S, T, (U,S), (U,T).
    Covariants {
        #[command(flatten)]
        input: InputArgs,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated subset, e.g. `H,S,dT`. Defaults to every member defined for N.
        #[arg(long, value_delimiter = ',')]
        emit: Vec<String>,
    },
    /// Check the four syzygies as exact identities.
    Syzygy {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Classify the Weierstrass equation along the curve through a point.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Start point `p,q`; rationals such as `1/2` or decimals.
        #[arg(long)]
        start: String,
    },
    /// Integrate the Hamilton flow and monitor the conserved quantities.
    Flow {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 0.1)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Rk4)]
        method: MethodArg,
        /// Steps between recorded samples.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long, default_value_t = 1e-10)]
        rtol: f64,
        #[arg(long, default_value_t = 1e-12)]
        atol: f64,
        /// Tolerance for the properness monitor.
        #[arg(long, default_value_t = 1e-8)]
        proper_tol: f64,
        /// Trajectory CSV destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full fixture and property suite.
    Report {
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Quantic JSON: {"order": N, "coefficients": ["a0", ..., "aN"]}.
    #[arg(long = "in")]
    pub path: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Rk4,
    #[value(alias = "rk45_adaptive")]
    Rk45,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcommandKind {
    Covariants,
    Syzygy,
    Classify,
    Flow,
    Report,
}

/// Validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub start: Option<String>,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub method: Method,
    pub output_stride: usize,
    pub emit: Vec<CovariantName>,
    pub tolerances: BTreeMap<&'static str, f64>,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    UsageError = 1,
    VerificationFailed = 2,
}

/// Failure while running a subcommand.
#[derive(Debug)]
pub struct Failure {
    pub outcome: Outcome,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let outcome = match err {
            Error::IdentityViolated(_) | Error::InexactDivision { .. } | Error::DegreeMismatch { .. } => {
                Outcome::VerificationFailed
            }
            _ => Outcome::UsageError,
        };
        Failure {
            outcome,
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        outcome: Outcome::UsageError,
        message: message.into(),
    }
}

fn positive(name: &str, x: f64) -> Result<f64, Failure> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be a positive number, got {x}")))
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, Failure> {
        let mut cfg = RunConfig {
            subcommand: SubcommandKind::Report,
            input_path: None,
            output_path: None,
            start: None,
            t_end: None,
            dt: None,
            method: Method::Rk4,
            output_stride: 1,
            emit: Vec::new(),
            tolerances: BTreeMap::new(),
            seed: DEFAULT_SEED,
        };
        match cli.command {
            Command::Covariants { input, out, emit } => {
                cfg.subcommand = SubcommandKind::Covariants;
                cfg.input_path = Some(input.path);
                cfg.output_path = out;
                cfg.emit = emit
                    .iter()
                    .map(|e| CovariantName::parse(e))
                    .collect::<Result<_, _>>()?;
            }
            Command::Syzygy { input } => {
                cfg.subcommand = SubcommandKind::Syzygy;
                cfg.input_path = Some(input.path);
            }
            Command::Classify { input, start } => {
                cfg.subcommand = SubcommandKind::Classify;
                cfg.input_path = Some(input.path);
                cfg.start = Some(start);
            }
            Command::Flow {
                input,
                start,
                t_end,
                dt,
                method,
                stride,
                rtol,
                atol,
                proper_tol,
                out,
            } => {
                cfg.subcommand = SubcommandKind::Flow;
                cfg.input_path = Some(input.path);
                cfg.output_path = out;
                cfg.start = Some(start);
                cfg.t_end = Some(positive("t-end", t_end)?);
                cfg.dt = Some(positive("dt", dt)?);
                cfg.method = match method {
                    MethodArg::Rk4 => Method::Rk4,
                    MethodArg::Rk45 => Method::Rk45Adaptive,
                };
                if stride == 0 {
                    return Err(usage("--stride must be at least 1"));
                }
                cfg.output_stride = stride;
                cfg.tolerances.insert("rtol", positive("rtol", rtol)?);
                cfg.tolerances.insert("atol", positive("atol", atol)?);
                cfg.tolerances.insert("proper", positive("proper-tol", proper_tol)?);
            }
            Command::Report { seed, out } => {
                cfg.subcommand = SubcommandKind::Report;
                cfg.output_path = out;
                cfg.seed = seed.unwrap_or(DEFAULT_SEED);
            }
        }
        Ok(cfg)
    }
}

fn read_input(cfg: &RunConfig) -> Result<BinaryQuantic, Failure> {
    let path = cfg.input_path.as_ref().ok_or_else(|| usage("missing --in"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_quantic(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit_json(cfg: &RunConfig, value: &Value, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON value serializes") + "\n";
    match &cfg.output_path {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write to stdout: {e}"))),
    }
}

fn parse_start_exact(text: &str) -> Result<(quantic_core::Rational, quantic_core::Rational), Failure> {
    let (p, q) = text
        .split_once(',')
        .ok_or_else(|| usage(format!("--start expects \"p,q\", got {text:?}")))?;
    Ok((parse_rational(p)?, parse_rational(q)?))
}

fn parse_start_float(text: &str) -> Result<(f64, f64), Failure> {
    let (p, q) = parse_start_exact(text)?;
    let (p, q) = (
        quantic_core::algebra::rational_to_f64(&p),
        quantic_core::algebra::rational_to_f64(&q),
    );
    Ok((p, q))
}

/// Runs one subcommand, writing its primary output to `stdout` (or the
/// configured file).
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome, Failure> {
    match cfg.subcommand {
        SubcommandKind::Covariants => {
            let u = read_input(cfg)?;
            let names = if cfg.emit.is_empty() {
                let all = CovariantName::available(u.order());
                if all.is_empty() {
                    return Err(usage(format!(
                        "covariants requires N ≥ 2 (got N = {})",
                        u.order()
                    )));
                }
                all
            } else {
                cfg.emit.clone()
            };
            emit_json(cfg, &covariants_to_json(&u, &names)?, stdout)?;
            Ok(Outcome::Success)
        }
        SubcommandKind::Syzygy => {
            let u = read_input(cfg)?;
            let set = CovariantSet::new(&u)?;
            let residuals = set.syzygies();
            emit_json(cfg, &syzygies_to_json(&residuals), stdout)?;
            Ok(if residuals.all_zero() {
                Outcome::Success
            } else {
                Outcome::VerificationFailed
            })
        }
        SubcommandKind::Classify => {
            let u = read_input(cfg)?;
            let (p, q) = parse_start_exact(cfg.start.as_deref().unwrap_or_default())?;
            let c = classify(&u, (&p, &q))?;
            emit_json(cfg, &classification_to_json(&c), stdout)?;
            Ok(Outcome::Success)
        }
        SubcommandKind::Flow => {
            let u = read_input(cfg)?;
            let start = parse_start_float(cfg.start.as_deref().unwrap_or_default())?;
            let defaults = FlowConfig::default();
            let flow_cfg = FlowConfig {
                t_end: cfg.t_end.unwrap_or(defaults.t_end),
                dt: cfg.dt.unwrap_or(defaults.dt),
                method: cfg.method,
                output_stride: cfg.output_stride,
                rtol: cfg.tolerances.get("rtol").copied().unwrap_or(defaults.rtol),
                atol: cfg.tolerances.get("atol").copied().unwrap_or(defaults.atol),
                ..defaults
            };
            let report = integrate(&u, start, &flow_cfg)?;
            if let Some(path) = &cfg.output_path {
                let file = fs::File::create(path)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                write_trajectory_csv(&report, std::io::BufWriter::new(file))?;
            }
            let tol = cfg.tolerances.get("proper").copied().unwrap_or(1e-8);
            let summary = flow_summary_to_json(&report, tol);
            let text = serde_json::to_string_pretty(&summary).expect("serializes") + "\n";
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))?;
            Ok(Outcome::Success)
        }
        SubcommandKind::Report => {
            let summary = run_report(cfg.seed)?;
            let value = serde_json::to_value(&summary).expect("summary serializes");
            emit_json(cfg, &value, stdout)?;
            Ok(if summary.all_passed {
                Outcome::Success
            } else {
                Outcome::VerificationFailed
            })
        }
    }
}
