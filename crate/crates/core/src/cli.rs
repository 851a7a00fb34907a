//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error or unknown gate,
//! 3 invalid matrix or state file, 4 technique not applicable.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    cc_bound, ce_bound, noisy_cc_bound, noisy_ce_bound, noisy_unitary_repetition, parallel_repetition, BoundReport,
    Reference, Technique,
};
use crate::campaign::{run_campaign_with, CampaignConfig, CampaignSummary, DEFAULT_RESTARTS, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::gates::{catalog_lookup, gate_from_file, parse_matrix, Gate, Rng, TABLE_GATES};
use crate::optimize::SearchOptions;
use crate::qmath::DensityMatrix;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_MATRIX: i32 = 3;
pub const EXIT_NOT_APPLICABLE: i32 = 4;

/// Restarts for single-gate and table reports.
pub const REPORT_RESTARTS: usize = 32;
/// Samples used by `campaign --full`.
pub const FULL_SAMPLES: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "nlqc", version, about = "Entanglement lower bounds for non-local computation of two-qubit gates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Random seed for optimizer restarts and Haar sampling.
    #[arg(long, global = true, env = "NLQC_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TechniqueArg {
    Cc,
    Ce,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bounds for one gate.
    Gate(GateArgs),
    /// Bounds for every benchmark gate in the catalog.
    Table(TableArgs),
    /// Haar-random sweep of the cc bound.
    Campaign(CampaignArgs),
    /// Bound for n parallel uses of a gate.
    Repeat(RepeatArgs),
}

#[derive(Debug, Args)]
pub struct GateSource {
    /// Catalog gate name.
    #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
    pub name: Option<String>,
    /// Matrix file holding a 4x4 unitary on (A, B).
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    #[command(flatten)]
    pub source: GateSource,
    #[arg(long, value_enum, default_value_t = TechniqueArg::Both)]
    pub technique: TechniqueArg,
    /// Reference state on (Q, A) for cc: bell, cc, both, or a matrix file.
    #[arg(long, default_value = "both")]
    pub reference: String,
    /// Only try the gate as given, not with its wires exchanged.
    #[arg(long)]
    pub as_given: bool,
    /// Diamond-norm error of the implementation, for the noisy cc bound.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Error parameter of the noisy ce bound.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Qubits on wire A in the noisy cc correction.
    #[arg(long, default_value_t = 1)]
    pub n_a: u32,
    #[arg(long, default_value_t = REPORT_RESTARTS)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = REPORT_RESTARTS)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    #[arg(long, default_value_t = crate::campaign::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Run the long 100,000-sample sweep.
    #[arg(long, conflicts_with = "samples")]
    pub full: bool,
    #[arg(long, default_value_t = crate::campaign::DEFAULT_BINS)]
    pub bins: usize,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Record file (CSV). The summary is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Continue an interrupted run from the record file.
    #[arg(long, requires = "out")]
    pub resume: bool,
    /// Sweep the ce bound instead of cc.
    #[arg(long)]
    pub ce: bool,
    /// Reference states for cc: bell, cc, or both.
    #[arg(long, default_value = "both")]
    pub reference: String,
}

#[derive(Debug, Args)]
pub struct RepeatArgs {
    #[command(flatten)]
    pub source: GateSource,
    #[arg(long, value_enum, default_value_t = TechniqueArg::Cc)]
    pub technique: TechniqueArg,
    /// Number of parallel copies.
    #[arg(short = 'n', long = "copies")]
    pub n: u32,
    /// Distance of each copy from the gate, for the noisy-unitary cc bound.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub n_a: u32,
    #[arg(long, default_value_t = REPORT_RESTARTS)]
    pub restarts: usize,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownGate { .. } | Error::Config(_) | Error::Domain { .. } => EXIT_USAGE,
        Error::NotApplicable(_) => EXIT_NOT_APPLICABLE,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INVALID_MATRIX,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Gate(a) => cmd_gate(cli, a, out),
        Command::Table(a) => cmd_table(cli, a, out),
        Command::Campaign(a) => cmd_campaign(cli, a, out, err),
        Command::Repeat(a) => cmd_repeat(cli, a, out),
    }
}

fn load_gate(src: &GateSource) -> Result<Gate> {
    match (&src.name, &src.matrix) {
        (Some(name), None) => catalog_lookup(name),
        (None, Some(path)) => gate_from_file(path),
        _ => Err(Error::Config("give exactly one of a gate name or --matrix".into())),
    }
}

fn parse_references(arg: &str) -> Result<Vec<Reference>> {
    match arg.to_ascii_lowercase().as_str() {
        "both" => Ok(Reference::defaults()),
        "bell" | "psi+" => Ok(vec![Reference::Bell]),
        "cc" | "rho_cc" => Ok(vec![Reference::Classical]),
        _ => {
            let path = Path::new(arg);
            if !path.exists() {
                return Err(Error::Config(format!(
                    "reference must be bell, cc, both or an existing matrix file, got `{arg}`"
                )));
            }
            let m = parse_matrix(&std::fs::read_to_string(path)?)?;
            Ok(vec![Reference::custom(DensityMatrix::new(m, &[2, 2], &["Q", "A"])?)?])
        }
    }
}

fn check_eps(eps: Option<f64>) -> Result<()> {
    match eps {
        Some(e) if !(0.0..0.25).contains(&e) => Err(Error::Config(format!("--eps must lie in [0, 1/4), got {e}"))),
        _ => Ok(()),
    }
}

#[derive(Debug, Serialize)]
struct GateOutput {
    gate: String,
    reports: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noisy_cc_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noisy_ce_bound: Option<f64>,
}

fn cmd_gate(cli: &Cli, a: &GateArgs, out: &mut dyn Write) -> Result<()> {
    check_eps(a.eps)?;
    let gate = load_gate(&a.source)?;
    let refs = parse_references(&a.reference)?;
    let opts = SearchOptions::with_restarts(a.restarts.max(1));
    let mut rng = Rng::new(cli.seed);
    let mut output = GateOutput {
        gate: gate.name().to_owned(),
        reports: Vec::new(),
        noisy_cc_bound: None,
        noisy_ce_bound: None,
    };
    if a.technique != TechniqueArg::Ce {
        let r = cc_bound(&gate, &refs, !a.as_given, &opts, &mut rng.fork())?;
        if let Some(eps) = a.eps {
            output.noisy_cc_bound = Some(noisy_cc_bound(r.lambda1, r.lambda2, eps, a.n_a)?);
        }
        output.reports.push(r);
    }
    if a.technique != TechniqueArg::Cc {
        let r = ce_bound(&gate, &opts, &mut rng.fork());
        if let Some(gamma) = a.gamma {
            output.noisy_ce_bound = Some(noisy_ce_bound(r.lambda1, r.lambda2, gamma)?);
        }
        output.reports.push(r);
    }
    match cli.format {
        Format::Structured => write_json(out, &output),
        Format::Human => {
            writeln!(out, "gate {}", output.gate)?;
            for r in &output.reports {
                write_report(out, r)?;
            }
            if let Some(b) = output.noisy_cc_bound {
                writeln!(out, "  noisy cc bound (eps {}, n_A {}): {:.3}", a.eps.unwrap_or(0.0), a.n_a, b)?;
            }
            if let Some(b) = output.noisy_ce_bound {
                writeln!(out, "  noisy ce bound (gamma {}): {:.3}", a.gamma.unwrap_or(0.0), b)?;
            }
            Ok(())
        }
    }
}

fn bloch(r: [f64; 3]) -> String {
    format!("({:.3}, {:.3}, {:.3})", r[0], r[1], r[2])
}

fn write_report(out: &mut dyn Write, r: &BoundReport) -> Result<()> {
    writeln!(
        out,
        "  {}  bound {:.3}  lambda1 {:.3}  lambda2 {:.3}  reference {}  orientation {}",
        r.technique, r.bound, r.lambda1, r.lambda2, r.reference, r.orientation
    )?;
    writeln!(out, "      phi1 {}  phi2 {}", bloch(r.phi1), bloch(r.phi2))?;
    if let Some(flag) = r.flag {
        writeln!(out, "      {flag}")?;
    }
    if !r.optimizer.converged {
        writeln!(out, "      warning: optimizer did not meet its tolerance on every start")?;
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct TableRow {
    gate: String,
    ce: BoundReport,
    cc: BoundReport,
}

/// cc and ce reports for every benchmark gate.
pub fn table_rows(seed: u64, restarts: usize) -> Result<Vec<(BoundReport, BoundReport)>> {
    let opts = SearchOptions::with_restarts(restarts.max(1));
    TABLE_GATES
        .iter()
        .map(|name| {
            let gate = catalog_lookup(name)?;
            let mut rng = Rng::new(seed);
            let cc = cc_bound(&gate, &Reference::defaults(), true, &opts, &mut rng.fork())?;
            let ce = ce_bound(&gate, &opts, &mut rng.fork());
            Ok((cc, ce))
        })
        .collect()
}

fn cmd_table(cli: &Cli, a: &TableArgs, out: &mut dyn Write) -> Result<()> {
    let rows = table_rows(cli.seed, a.restarts)?;
    match cli.format {
        Format::Structured => {
            let rows: Vec<TableRow> = rows
                .into_iter()
                .map(|(cc, ce)| TableRow {
                    gate: cc.gate_name.clone(),
                    ce,
                    cc,
                })
                .collect();
            write_json(out, &rows)
        }
        Format::Human => {
            writeln!(out, "{:<18}{:>8}{:>8}  cc reference", "gate", "ce", "cc")?;
            for (cc, ce) in &rows {
                writeln!(out, "{:<18}{:>8.3}{:>8.3}  {}", cc.gate_name, ce.bound, cc.bound, cc.reference)?;
            }
            Ok(())
        }
    }
}

fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".summary.json");
    out.with_file_name(name)
}

fn cmd_campaign(cli: &Cli, a: &CampaignArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let cfg = CampaignConfig {
        samples: if a.full { FULL_SAMPLES } else { a.samples },
        seed: cli.seed,
        references: parse_references(&a.reference)?,
        restarts: a.restarts,
        bins: a.bins,
        technique: if a.ce { Technique::Ce } else { Technique::Cc },
        out: a.out.clone(),
        resume: a.resume,
        ..Default::default()
    };
    cfg.validate()?;
    let (_, summary) = run_campaign_with(&cfg, |done, total| {
        let _ = writeln!(err, "campaign: {done}/{total} samples");
    })?;
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&summary).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(summary_path(path), text + "\n")?;
    }
    match cli.format {
        Format::Structured => write_json(out, &summary),
        Format::Human => write_summary(out, &summary),
    }
}

fn write_summary(out: &mut dyn Write, s: &CampaignSummary) -> Result<()> {
    writeln!(out, "samples {}", s.samples)?;
    writeln!(out, "mean {:.3}  min {:.3}  max {:.3}", s.mean, s.min, s.max)?;
    let peak = s.bins.iter().map(|b| b.count).max().unwrap_or(0).max(1);
    for b in &s.bins {
        let bar = "#".repeat((b.count * 40).div_ceil(peak));
        writeln!(out, "{:>6.3} {:>7} {}", b.lower, b.count, bar)?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct RepeatOutput {
    gate: String,
    technique: Technique,
    copies: u32,
    single_copy_bound: f64,
    bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    noisy_unitary_bound: Option<f64>,
}

fn cmd_repeat(cli: &Cli, a: &RepeatArgs, out: &mut dyn Write) -> Result<()> {
    if a.n == 0 {
        return Err(Error::Config("-n must be at least 1".into()));
    }
    let gate = load_gate(&a.source)?;
    let opts = SearchOptions::with_restarts(a.restarts.max(1));
    let mut rng = Rng::new(cli.seed);
    let report = match a.technique {
        TechniqueArg::Cc => cc_bound(&gate, &Reference::defaults(), true, &opts, &mut rng)?,
        TechniqueArg::Ce => ce_bound(&gate, &opts, &mut rng),
        TechniqueArg::Both => return Err(Error::Config("repeat takes --technique cc or ce".into())),
    };
    let bound = parallel_repetition(&report, a.n)?;
    let noisy = match a.eps {
        Some(eps) => Some(noisy_unitary_repetition(&report, a.n, eps, a.n_a)?),
        None => None,
    };
    let output = RepeatOutput {
        gate: gate.name().to_owned(),
        technique: report.technique,
        copies: a.n,
        single_copy_bound: report.bound,
        bound,
        noisy_unitary_bound: noisy,
    };
    match cli.format {
        Format::Structured => write_json(out, &output),
        Format::Human => {
            writeln!(
                out,
                "{} x{} ({}): bound {:.3}  (single copy {:.3})",
                output.gate, output.copies, output.technique, output.bound, output.single_copy_bound
            )?;
            if let Some(b) = noisy {
                writeln!(out, "  noisy copies (eps {}): {:.3}", a.eps.unwrap_or(0.0), b)?;
            }
            Ok(())
        }
    }
}
