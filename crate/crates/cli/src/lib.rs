//! Command implementations behind the `ccnr` binary.
//!
//! Each command returns its complete stdout text so that it can be tested
//! without spawning a process; `main` only prints and maps errors to exit
//! codes.

pub mod format;

use std::fs;
use std::path::{Path, PathBuf};

use ccnr::criteria::{evaluate, operator_schmidt, CriterionReport, DEFAULT_TOL};
use ccnr::json::{read_state, StateFileError};
use ccnr::states::{horodecki_3x3, isotropic, random_ginibre, werner_qubit, DensityMatrix};
use ccnr::{LinalgError, StateError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::format::{fmt15, round15};

/// CSV header of `family` output.
pub const CSV_HEADER: &str = "family,param,ccnr_value,ppt_min_eig,ccnr_entangled,ppt_entangled";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    /// 1 for I/O, parse and usage errors; 2 for domain and validation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<StateFileError> for CliError {
    fn from(e: StateFileError) -> Self {
        match e {
            StateFileError::Parse(msg) => CliError::Parse(msg),
            StateFileError::Invalid(e) => e.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ccnr",
    version,
    about = "Realignment (CCNR) and PPT entanglement tests for bipartite states"
)]
pub struct Cli {
    /// One-sided tolerance for the entanglement verdicts.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate both criteria on a state file.
    Eval(EvalArgs),
    /// Scan a one-parameter state family on a uniform grid (CSV).
    Family(FamilyArgs),
    /// Evaluate a seeded ensemble of random Ginibre states.
    Sample(SampleArgs),
    /// Print the leading operator Schmidt coefficients of a state file.
    Schmidt(SchmidtArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// State file in the JSON state format.
    pub state_file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// One of werner2, isotropic2, isotropic3, horodecki3x3.
    pub family: String,
    #[arg(allow_negative_numbers = true)]
    pub from: f64,
    #[arg(allow_negative_numbers = true)]
    pub to: f64,
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub dim_a: usize,
    #[arg(long)]
    pub dim_b: usize,
    /// Rank of the Ginibre factor; defaults to full rank.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Member i uses substream seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SchmidtArgs {
    pub state_file: PathBuf,
    /// Number of coefficients to print.
    #[arg(short, long, default_value_t = 4)]
    pub k: usize,
    /// Print every coefficient regardless of -k.
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    check_tol(cli.tol)?;
    match &cli.command {
        Command::Eval(a) => cmd_eval(&a.state_file, cli.tol, a.format),
        Command::Family(a) => cmd_family(&a.family, a.from, a.to, a.steps, cli.tol, a.format),
        Command::Sample(a) => cmd_sample(a.dim_a, a.dim_b, a.rank, a.samples, a.seed, cli.tol, a.format),
        Command::Schmidt(a) => cmd_schmidt(&a.state_file, a.k, a.full, a.format),
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::Domain(format!("tolerance must be positive, got {tol}")))
    }
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

pub fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(read_state(&text)?)
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportJson {
    ccnr_value: f64,
    ccnr_entangled: bool,
    ppt_min_eig: f64,
    ppt_entangled: bool,
    tolerance: f64,
    dim_a: usize,
    dim_b: usize,
}

fn verdict(entangled: bool) -> &'static str {
    if entangled {
        "ENTANGLED"
    } else {
        "UNDETECTED"
    }
}

pub fn render_report(report: &CriterionReport, dims: (usize, usize), format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let out = ReportJson {
                ccnr_value: round15(report.ccnr_value),
                ccnr_entangled: report.ccnr_entangled,
                ppt_min_eig: round15(report.ppt_min_eig),
                ppt_entangled: report.ppt_entangled,
                tolerance: report.tolerance,
                dim_a: dims.0,
                dim_b: dims.1,
            };
            Ok(serde_json::to_string(&out).expect("report serializes") + "\n")
        }
        Format::Text => {
            let rows = [
                ("dims", format!("{}x{}", dims.0, dims.1)),
                ("ccnr value", fmt15(report.ccnr_value)),
                ("ccnr verdict", verdict(report.ccnr_entangled).to_string()),
                ("ppt min eigenvalue", fmt15(report.ppt_min_eig)),
                ("ppt verdict", verdict(report.ppt_entangled).to_string()),
                ("tolerance", format!("{:e}", report.tolerance)),
            ];
            Ok(rows.iter().map(|(k, v)| format!("{k:<20}{v}\n")).collect())
        }
        Format::Csv => Err(unsupported(format, "eval")),
    }
}

pub fn cmd_eval(path: &Path, tol: f64, format: Format) -> Result<String, CliError> {
    if format == Format::Csv {
        return Err(unsupported(format, "eval"));
    }
    let rho = load_state(path)?;
    let report = evaluate(&rho, tol)?;
    render_report(&report, rho.dims(), format)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Werner2,
    Isotropic2,
    Isotropic3,
    Horodecki3x3,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "werner2" => Ok(Family::Werner2),
            "isotropic2" => Ok(Family::Isotropic2),
            "isotropic3" => Ok(Family::Isotropic3),
            "horodecki3x3" => Ok(Family::Horodecki3x3),
            other => Err(CliError::Usage(format!(
                "unknown family '{other}' (expected werner2, isotropic2, isotropic3 or horodecki3x3)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Werner2 => "werner2",
            Family::Isotropic2 => "isotropic2",
            Family::Isotropic3 => "isotropic3",
            Family::Horodecki3x3 => "horodecki3x3",
        }
    }

    pub fn state(self, param: f64) -> Result<DensityMatrix, StateError> {
        match self {
            Family::Werner2 => werner_qubit(param),
            Family::Isotropic2 => isotropic(2, param),
            Family::Isotropic3 => isotropic(3, param),
            Family::Horodecki3x3 => horodecki_3x3(param),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRow {
    pub family: String,
    pub param: f64,
    pub ccnr_value: f64,
    pub ppt_min_eig: f64,
    pub ccnr_entangled: u8,
    pub ppt_entangled: u8,
}

impl ScanRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.family,
            fmt15(self.param),
            fmt15(self.ccnr_value),
            fmt15(self.ppt_min_eig),
            self.ccnr_entangled,
            self.ppt_entangled
        )
    }
}

/// `steps` uniformly spaced points from `from` to `to`, both included.
pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                to
            } else {
                from + (to - from) * (i as f64 / last as f64)
            }
        })
        .collect()
}

pub fn scan_family(family: Family, from: f64, to: f64, steps: usize, tol: f64) -> Result<Vec<ScanRow>, CliError> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::Domain("scan bounds must be finite".into()));
    }
    if steps < 2 {
        return Err(CliError::Domain(format!("steps must be at least 2, got {steps}")));
    }
    if from >= to {
        return Err(CliError::Domain(format!(
            "empty scan range: from {from} must be below to {to}"
        )));
    }
    // Domain errors surface before any work is done.
    family.state(from)?;
    family.state(to)?;

    grid(from, to, steps)
        .into_par_iter()
        .map(|param| {
            let report = evaluate(&family.state(param)?, tol)?;
            Ok(ScanRow {
                family: family.name().to_string(),
                param,
                ccnr_value: report.ccnr_value,
                ppt_min_eig: report.ppt_min_eig,
                ccnr_entangled: report.ccnr_entangled as u8,
                ppt_entangled: report.ppt_entangled as u8,
            })
        })
        .collect()
}

pub fn cmd_family(name: &str, from: f64, to: f64, steps: usize, tol: f64, format: Format) -> Result<String, CliError> {
    let family = Family::parse(name)?;
    if format == Format::Text {
        return Err(unsupported(format, "family"));
    }
    let rows = scan_family(family, from, to, steps, tol)?;
    match format {
        Format::Json => {
            let rounded: Vec<ScanRow> = rows
                .into_iter()
                .map(|r| ScanRow {
                    param: round15(r.param),
                    ccnr_value: round15(r.ccnr_value),
                    ppt_min_eig: round15(r.ppt_min_eig),
                    ..r
                })
                .collect();
            Ok(serde_json::to_string(&rounded).expect("rows serialize") + "\n")
        }
        _ => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for row in &rows {
                out.push_str(&row.to_csv());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnsembleSummary {
    pub samples: usize,
    pub detected_ccnr: usize,
    pub detected_ppt: usize,
    pub detected_both: usize,
    pub detected_only_ccnr: usize,
    pub detected_only_ppt: usize,
}

impl EnsembleSummary {
    pub fn tally<'a>(reports: impl IntoIterator<Item = &'a CriterionReport>) -> Self {
        let mut s = EnsembleSummary::default();
        for r in reports {
            s.samples += 1;
            s.detected_ccnr += r.ccnr_entangled as usize;
            s.detected_ppt += r.ppt_entangled as usize;
            match (r.ccnr_entangled, r.ppt_entangled) {
                (true, true) => s.detected_both += 1,
                (true, false) => s.detected_only_ccnr += 1,
                (false, true) => s.detected_only_ppt += 1,
                (false, false) => {}
            }
        }
        s
    }
}

/// Evaluates ensemble members `seed + 0 .. seed + samples`, in order.
pub fn sample_reports(
    dim_a: usize,
    dim_b: usize,
    rank: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<CriterionReport>, CliError> {
    if samples == 0 {
        return Err(CliError::Domain("samples must be at least 1".into()));
    }
    // Validates dims and rank once up front.
    random_ginibre(dim_a, dim_b, rank, seed)?;
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let rho = random_ginibre(dim_a, dim_b, rank, seed.wrapping_add(i))?;
            Ok(evaluate(&rho, tol)?)
        })
        .collect()
}

pub fn cmd_sample(
    dim_a: usize,
    dim_b: usize,
    rank: Option<usize>,
    samples: usize,
    seed: u64,
    tol: f64,
    format: Format,
) -> Result<String, CliError> {
    let rank = rank.unwrap_or(dim_a * dim_b);
    let summary = EnsembleSummary::tally(&sample_reports(dim_a, dim_b, rank, samples, seed, tol)?);
    match format {
        Format::Json => Ok(serde_json::to_string(&summary).expect("summary serializes") + "\n"),
        Format::Text => {
            let rows = [
                ("samples", summary.samples),
                ("detected ccnr", summary.detected_ccnr),
                ("detected ppt", summary.detected_ppt),
                ("detected both", summary.detected_both),
                ("only ccnr", summary.detected_only_ccnr),
                ("only ppt", summary.detected_only_ppt),
            ];
            Ok(rows.iter().map(|(k, v)| format!("{k:<16}{v}\n")).collect())
        }
        Format::Csv => Err(unsupported(format, "sample")),
    }
}

#[derive(Debug, Serialize)]
struct SchmidtJson {
    sigmas: Vec<f64>,
    sum: f64,
    total: f64,
}

/// Prints the top `k` coefficients, their sum, and the sum over all of them
/// (which equals the realignment statistic).
pub fn cmd_schmidt(path: &Path, k: usize, full: bool, format: Format) -> Result<String, CliError> {
    if k == 0 {
        return Err(CliError::Domain("k must be at least 1".into()));
    }
    if format == Format::Csv {
        return Err(unsupported(format, "schmidt"));
    }
    let rho = load_state(path)?;
    let os = operator_schmidt(&rho)?;
    let shown = if full { os.sigmas.len() } else { k.min(os.sigmas.len()) };
    let top = &os.sigmas[..shown];
    let sum: f64 = top.iter().sum();
    let total = os.sum();
    match format {
        Format::Json => {
            let out = SchmidtJson {
                sigmas: top.iter().map(|&s| round15(s)).collect(),
                sum: round15(sum),
                total: round15(total),
            };
            Ok(serde_json::to_string(&out).expect("coefficients serialize") + "\n")
        }
        _ => {
            let mut out = String::new();
            for (i, s) in top.iter().enumerate() {
                out.push_str(&format!("sigma_{:<4}{}\n", i + 1, fmt15(*s)));
            }
            out.push_str(&format!("{:<10}{}\n", "sum", fmt15(sum)));
            out.push_str(&format!("{:<10}{}\n", "total", fmt15(total)));
            Ok(out)
        }
    }
}
