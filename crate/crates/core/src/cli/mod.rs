//! Command-line front end.
//!
//! Exit codes: 0 certified, 1 refuted, 2 unknown, 3 input error. The
//! `oracle` command maps copositive up to band, not copositive and
//! indeterminate to 0, 1 and 2.

pub mod document;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::criteria::{aggregate, certify_all, diag_necessity, CheckOptions, Criterion, Outcome};
use crate::error::{CoposError, Result};
use crate::oracle::{min_on_simplex, Classification, OracleConfig};
use crate::tensor::SymmetricTensor;
use crate::vacuum::{check_at, coupling_tensor, scan_rho_with, Route, Z3Params};

pub use document::{parse_tensor, ParamsDocument, TensorDocument};
pub use report::{ConfigEcho, InputSummary, RunReport, TOOL_VERSION};

pub const EXIT_INPUT_ERROR: i32 = 3;

pub fn exit_code(o: Outcome) -> i32 {
    match o {
        Outcome::Certified => 0,
        Outcome::Refuted => 1,
        Outcome::Unknown => 2,
    }
}

pub fn oracle_exit_code(c: Classification) -> i32 {
    match c {
        Classification::CopositiveUpToBand => 0,
        Classification::NotCopositive => 1,
        Classification::Indeterminate => 2,
    }
}

#[derive(Debug, Parser)]
#[command(name = "copos", version, about = "Copositivity certificates for symmetric tensors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the closed-form criteria on a tensor file.
    Check(CheckArgs),
    /// Minimize the form over the unit simplex.
    Oracle(OracleArgs),
    /// Vacuum stability of the Z3 scalar potential.
    Vacuum(VacuumArgs),
    /// Criteria and oracle together, as one JSON document.
    Report(ReportArgs),
}

fn parse_criterion(s: &str) -> std::result::Result<Criterion, String> {
    s.parse().map_err(|e: CoposError| e.to_string())
}

#[derive(Debug, Args)]
pub struct OracleFlags {
    /// Grid resolution N (points k/N); default 2000 in dim 2, 120 otherwise.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Local refinement rounds [default: 3].
    #[arg(long)]
    pub refine: Option<usize>,
    /// Relative indeterminacy band [default: 1e-8].
    #[arg(long, env = "COPOS_BAND")]
    pub band: Option<f64>,
    /// Extra random simplex samples [default: 0].
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for the random samples [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
}

impl OracleFlags {
    pub fn config(&self, dim: usize) -> OracleConfig {
        let d = OracleConfig::for_dim(dim);
        OracleConfig {
            resolution: self.grid.unwrap_or(d.resolution),
            refine_rounds: self.refine.unwrap_or(d.refine_rounds),
            band: self.band.unwrap_or(d.band),
            samples: self.samples.unwrap_or(d.samples),
            seed: self.seed.unwrap_or(d.seed),
        }
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    /// Comma-separated criterion ids; default all that apply.
    #[arg(long, value_delimiter = ',', value_parser = parse_criterion)]
    pub criteria: Option<Vec<Criterion>>,
    #[arg(long)]
    pub strict: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub oracle: OracleFlags,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VacuumArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub l1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub l2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub l3: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub l4: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub ls: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub ls1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub ls2: f64,
    /// |ls12|; the coupling is taken negative.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub ls12: f64,
    /// Orbit parameter in [0, 1] [default: 1].
    #[arg(long, allow_negative_numbers = true, conflicts_with = "rho_scan")]
    pub rho: Option<f64>,
    /// Check rho = k/STEPS for k = 0..=STEPS.
    #[arg(long, value_name = "STEPS")]
    pub rho_scan: Option<usize>,
    #[arg(long)]
    pub strict: bool,
    /// Use the printed condition list instead of the theorem route.
    #[arg(long)]
    pub as_printed: bool,
    /// Also minimize the coupling tensor's form over the simplex.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub oracle_flags: OracleFlags,
    #[arg(long)]
    pub json: bool,
}

impl VacuumArgs {
    fn params(&self) -> Z3Params {
        Z3Params {
            l1: self.l1,
            l2: self.l2,
            l3: self.l3,
            l4: self.l4,
            ls: self.ls,
            ls1: self.ls1,
            ls2: self.ls2,
            abs_ls12: self.ls12,
            rho: self.rho.unwrap_or(1.0),
        }
    }
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Tensor document.
    #[arg(required_unless_present = "params", conflicts_with = "params")]
    pub file: Option<PathBuf>,
    /// Z3 coupling file instead of a tensor: {"l1": .., "ls12": .., "rho": ..}.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', value_parser = parse_criterion)]
    pub criteria: Option<Vec<Criterion>>,
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub oracle: OracleFlags,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CoposError::Document(format!("{}: {e}", path.display())))
}

fn load_tensor(path: &Path) -> Result<SymmetricTensor> {
    parse_tensor(&read(path)?).map_err(|e| CoposError::Document(format!("{}: {e}", path.display())))
}

fn check_options(t: &SymmetricTensor, criteria: &Option<Vec<Criterion>>, strict: bool) -> Result<CheckOptions> {
    if let Some(list) = criteria {
        if let Some(c) = list.iter().find(|c| !c.applies_to(t.order(), t.dim())) {
            return Err(CoposError::InvalidConfig(format!(
                "criterion {c} does not apply to order {} dim {}",
                t.order(),
                t.dim()
            )));
        }
    }
    Ok(CheckOptions {
        strict,
        only: criteria.clone(),
    })
}

fn applied(t: &SymmetricTensor, opts: &CheckOptions) -> Vec<Criterion> {
    Criterion::ALL
        .into_iter()
        .filter(|c| c.applies_to(t.order(), t.dim()))
        .filter(|c| opts.only.as_ref().is_none_or(|o| o.contains(c)))
        .collect()
}

/// Result of one command: the report and its exit code.
pub struct Run {
    pub report: RunReport,
    pub code: i32,
    pub json: bool,
}

pub fn cmd_check(args: &CheckArgs) -> Result<Run> {
    let t = load_tensor(&args.file)?;
    let opts = check_options(&t, &args.criteria, args.strict)?;
    let certificates = certify_all(&t, &opts);
    let agg = aggregate(&certificates);
    Ok(Run {
        report: RunReport {
            tool: "copos",
            tool_version: TOOL_VERSION,
            command: "check",
            input: InputSummary::tensor(&t),
            config: ConfigEcho {
                strict: args.strict,
                criteria: applied(&t, &opts),
                oracle: None,
                route: None,
                rho_scan: None,
            },
            certificates,
            oracle: None,
            vacuum: None,
            aggregate: agg,
        },
        code: exit_code(agg),
        json: args.json,
    })
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<Run> {
    let t = load_tensor(&args.file)?;
    let cfg = args.oracle.config(t.dim());
    let result = min_on_simplex(&t, &cfg)?;
    let code = oracle_exit_code(result.classification);
    let agg = if result.classification == Classification::NotCopositive {
        Outcome::Refuted
    } else {
        Outcome::Unknown
    };
    Ok(Run {
        report: RunReport {
            tool: "copos",
            tool_version: TOOL_VERSION,
            command: "oracle",
            input: InputSummary::tensor(&t),
            config: ConfigEcho {
                strict: false,
                criteria: Vec::new(),
                oracle: Some(cfg),
                route: None,
                rho_scan: None,
            },
            certificates: Vec::new(),
            oracle: Some(result),
            vacuum: None,
            aggregate: agg,
        },
        code,
        json: args.json,
    })
}

pub fn cmd_vacuum(args: &VacuumArgs) -> Result<Run> {
    let p = args.params();
    p.validate()?;
    let cfg = args.oracle.then(|| args.oracle_flags.config(3));
    cfg.as_ref().map(OracleConfig::validate).transpose()?;
    let route = if args.as_printed { Route::Printed } else { Route::Theorem };
    let stability = match args.rho_scan {
        Some(steps) => scan_rho_with(&p, steps, args.strict, cfg.as_ref())?,
        None => check_at(&p, args.strict, cfg.as_ref())?,
    };
    let diag = diag_necessity(&coupling_tensor(&p)?);
    let refuted = diag.outcome == Outcome::Refuted
        || stability
            .oracle
            .as_ref()
            .is_some_and(|o| o.classification == Classification::NotCopositive);
    let agg = if refuted {
        Outcome::Refuted
    } else {
        stability.verdict(route)
    };
    Ok(Run {
        report: RunReport {
            tool: "copos",
            tool_version: TOOL_VERSION,
            command: "vacuum",
            input: InputSummary::Z3 { params: p },
            config: ConfigEcho {
                strict: args.strict,
                criteria: vec![Criterion::Diag],
                oracle: cfg,
                route: Some(route),
                rho_scan: args.rho_scan,
            },
            certificates: vec![diag],
            oracle: stability.oracle.clone(),
            vacuum: Some(stability),
            aggregate: agg,
        },
        code: exit_code(agg),
        json: args.json,
    })
}

pub fn cmd_report(args: &ReportArgs) -> Result<Run> {
    let (t, input, vacuum_params) = match (&args.file, &args.params) {
        (Some(f), None) => {
            let t = load_tensor(f)?;
            let input = InputSummary::tensor(&t);
            (t, input, None)
        }
        (None, Some(pf)) => {
            let p = ParamsDocument::parse(&read(pf)?)
                .map_err(|e| CoposError::Document(format!("{}: {e}", pf.display())))?;
            (coupling_tensor(&p)?, InputSummary::Z3 { params: p }, Some(p))
        }
        _ => return Err(CoposError::InvalidConfig("give either a tensor file or --params".into())),
    };
    let opts = check_options(&t, &args.criteria, args.strict)?;
    let cfg = args.oracle.config(t.dim());
    let certificates = certify_all(&t, &opts);
    let oracle = min_on_simplex(&t, &cfg)?;
    let vacuum = vacuum_params.map(|p| check_at(&p, args.strict, None)).transpose()?;
    let agg = aggregate(&certificates);
    Ok(Run {
        report: RunReport {
            tool: "copos",
            tool_version: TOOL_VERSION,
            command: "report",
            input,
            config: ConfigEcho {
                strict: args.strict,
                criteria: applied(&t, &opts),
                oracle: Some(cfg),
                route: None,
                rho_scan: None,
            },
            certificates,
            oracle: Some(oracle),
            vacuum,
            aggregate: agg,
        },
        code: exit_code(agg),
        json: true,
    })
}

pub fn dispatch(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Vacuum(a) => cmd_vacuum(a),
        Command::Report(a) => cmd_report(a),
    }
}

/// Parses arguments, runs the command, writes its output and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(run) => {
            let text = if run.json {
                run.report.to_json()
            } else {
                run.report.to_text()
            };
            let _ = out.write_all(text.as_bytes());
            run.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}
