//! Haar-random sweeps of the cc bound.
//!
//! Sample `i` draws its unitary from `Rng::substream(seed, i)`, so results do
//! not depend on scheduling or on how a run was split across resumes. Records
//! are appended to a CSV file in chunks; a resumed run keeps the completed
//! prefix and continues from there.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{cc_bound, ce_bound, Reference, ReferenceTag, Technique};
use crate::error::{Error, Result};
use crate::gates::rng::substream_seed;
use crate::gates::{haar_random, Rng};
use crate::optimize::SearchOptions;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_RESTARTS: usize = 8;
pub const DEFAULT_BINS: usize = 50;
/// Samples evaluated between two writes of the record file.
pub const CHECKPOINT_EVERY: usize = 500;
/// Histogram range.
pub const HISTOGRAM_MAX: f64 = 0.5;

const HEADER: [&str; 6] = ["sample_index", "substream_seed", "reference", "lambda1", "lambda2", "bound"];

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub samples: usize,
    pub seed: u64,
    pub references: Vec<Reference>,
    pub both_orientations: bool,
    pub restarts: usize,
    pub bins: usize,
    pub technique: Technique,
    /// Record file; `None` keeps everything in memory.
    pub out: Option<PathBuf>,
    /// Continue from an existing record file instead of truncating it.
    pub resume: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            references: Reference::defaults(),
            both_orientations: true,
            restarts: DEFAULT_RESTARTS,
            bins: DEFAULT_BINS,
            technique: Technique::Cc,
            out: None,
            resume: false,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.bins == 0 {
            return Err(Error::Config("bins must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.references.is_empty() {
            return Err(Error::Config("at least one reference state is required".into()));
        }
        if self.resume && self.out.is_none() {
            return Err(Error::Config("resume needs a record file".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub sample_index: u64,
    pub substream_seed: u64,
    pub reference: ReferenceTag,
    pub lambda1: f64,
    pub lambda2: f64,
    /// cc: `(lambda1 - lambda2) / 2` without the degenerate cut-off.
    pub bound: f64,
    /// Seconds spent on this sample; absent for records read back from disk.
    pub wall_time: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub samples: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub bins: Vec<HistogramBin>,
}

/// Counts over `[0, 0.5]` split into `bins` half-open bins, the last one
/// closed. Values outside the range are clamped into the end bins.
pub fn histogram(records: &[CampaignRecord], bins: usize) -> Result<Vec<HistogramBin>> {
    if bins == 0 {
        return Err(Error::Config("bins must be at least 1".into()));
    }
    let width = HISTOGRAM_MAX / bins as f64;
    let mut counts = vec![0usize; bins];
    for r in records {
        let k = (r.bound / width).floor();
        let k = if k.is_nan() || k < 0.0 { 0 } else { (k as usize).min(bins - 1) };
        counts[k] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(k, count)| HistogramBin {
            lower: k as f64 * width,
            count,
        })
        .collect())
}

pub fn summarize(records: &[CampaignRecord], bins: usize) -> Result<CampaignSummary> {
    if records.is_empty() {
        return Err(Error::Config("no records to summarize".into()));
    }
    let n = records.len();
    let mean = records.iter().map(|r| r.bound).sum::<f64>() / n as f64;
    let min = records.iter().map(|r| r.bound).fold(f64::INFINITY, f64::min);
    let max = records.iter().map(|r| r.bound).fold(f64::NEG_INFINITY, f64::max);
    Ok(CampaignSummary {
        samples: n,
        mean,
        min,
        max,
        bins: histogram(records, bins)?,
    })
}

/// Evaluates one sample.
pub fn evaluate_sample(cfg: &CampaignConfig, index: u64) -> Result<CampaignRecord> {
    let start = Instant::now();
    let seed = substream_seed(cfg.seed, index);
    let mut rng = Rng::new(seed);
    let gate = haar_random(&mut rng);
    let opts = SearchOptions::with_restarts(cfg.restarts);
    let (reference, lambda1, lambda2, bound) = match cfg.technique {
        Technique::Cc => {
            let r = cc_bound(&gate, &cfg.references, cfg.both_orientations, &opts, &mut rng)?;
            (r.reference, r.lambda1, r.lambda2, 0.5 * (r.lambda1 - r.lambda2))
        }
        Technique::Ce => {
            let r = ce_bound(&gate, &opts, &mut rng);
            (r.reference, r.lambda1, r.lambda2, r.bound)
        }
    };
    Ok(CampaignRecord {
        sample_index: index,
        substream_seed: seed,
        reference,
        lambda1,
        lambda2,
        bound,
        wall_time: Some(start.elapsed().as_secs_f64()),
    })
}

/// Runs the sweep, reporting `(done, total)` after each chunk.
pub fn run_campaign_with(
    cfg: &CampaignConfig,
    mut progress: impl FnMut(usize, usize),
) -> Result<(Vec<CampaignRecord>, CampaignSummary)> {
    cfg.validate()?;
    let mut records = match (&cfg.out, cfg.resume) {
        (Some(path), true) if path.exists() => read_records(path)?,
        _ => Vec::new(),
    };
    check_prefix(cfg, &records)?;
    records.truncate(cfg.samples);

    let mut sink = match &cfg.out {
        Some(path) => Some(open_sink(path, cfg.resume && !records.is_empty(), records.len())?),
        None => None,
    };
    progress(records.len(), cfg.samples);
    while records.len() < cfg.samples {
        let lo = records.len();
        let hi = (lo + CHECKPOINT_EVERY).min(cfg.samples);
        let chunk: Vec<CampaignRecord> = (lo..hi)
            .into_par_iter()
            .map(|i| evaluate_sample(cfg, i as u64))
            .collect::<Result<_>>()?;
        if let Some(w) = sink.as_mut() {
            for r in &chunk {
                writeln!(w, "{}", format_record(r))?;
            }
            w.flush()?;
        }
        records.extend(chunk);
        progress(records.len(), cfg.samples);
    }
    let summary = summarize(&records, cfg.bins)?;
    Ok((records, summary))
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<(Vec<CampaignRecord>, CampaignSummary)> {
    run_campaign_with(cfg, |_, _| {})
}

/// Records on disk must be the leading samples of this configuration.
fn check_prefix(cfg: &CampaignConfig, records: &[CampaignRecord]) -> Result<()> {
    for (i, r) in records.iter().enumerate() {
        if r.sample_index != i as u64 || r.substream_seed != substream_seed(cfg.seed, i as u64) {
            return Err(Error::Config(format!(
                "record file does not continue this campaign (line {} has sample {} seed {:#018x})",
                i + 2,
                r.sample_index,
                r.substream_seed
            )));
        }
    }
    Ok(())
}

/// Opens the record file for writing. When appending, anything after the
/// header and the first `keep` records is cut off first.
fn open_sink(path: &Path, append: bool, keep: usize) -> Result<BufWriter<File>> {
    if append {
        let text = std::fs::read(path)?;
        let end = text
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == b'\n')
            .nth(keep)
            .map_or(text.len(), |(i, _)| i + 1);
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(end as u64)?;
        drop(file);
        return Ok(BufWriter::new(OpenOptions::new().append(true).open(path)?));
    }
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", HEADER.join(","))?;
    w.flush()?;
    Ok(w)
}

fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn reference_code(tag: ReferenceTag) -> &'static str {
    match tag {
        ReferenceTag::Bell => "bell",
        ReferenceTag::Cc => "cc",
        ReferenceTag::CcOrBell => "cc_or_bell",
        ReferenceTag::Custom => "custom",
    }
}

fn parse_reference(s: &str) -> Option<ReferenceTag> {
    Some(match s {
        "bell" => ReferenceTag::Bell,
        "cc" => ReferenceTag::Cc,
        "cc_or_bell" => ReferenceTag::CcOrBell,
        "custom" => ReferenceTag::Custom,
        _ => return None,
    })
}

/// One CSV line, without the newline.
pub fn format_record(r: &CampaignRecord) -> String {
    format!(
        "{},{:#018x},{},{},{},{}",
        r.sample_index,
        r.substream_seed,
        reference_code(r.reference),
        fmt_real(r.lambda1),
        fmt_real(r.lambda2),
        fmt_real(r.bound)
    )
}

/// Reads a record file. A trailing partial line from an interrupted write is
/// ignored.
pub fn read_records(path: &Path) -> Result<Vec<CampaignRecord>> {
    let text = std::fs::read_to_string(path)?;
    let complete = match text.rfind('\n') {
        Some(k) => &text[..=k],
        None => "",
    };
    let mut lines = complete.lines();
    match lines.next() {
        Some(h) if h.trim() == HEADER.join(",") => {}
        Some(_) => return Err(parse_error(path, 1, "unexpected header")),
        None => return Ok(Vec::new()),
    }
    let mut out = Vec::new();
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != HEADER.len() {
            return Err(parse_error(path, lineno, "wrong number of fields"));
        }
        let real = |s: &str| s.parse::<f64>().map_err(|_| parse_error(path, lineno, "bad number"));
        out.push(CampaignRecord {
            sample_index: f[0].parse().map_err(|_| parse_error(path, lineno, "bad sample index"))?,
            substream_seed: u64::from_str_radix(f[1].trim_start_matches("0x"), 16)
                .map_err(|_| parse_error(path, lineno, "bad seed"))?,
            reference: parse_reference(f[2]).ok_or_else(|| parse_error(path, lineno, "bad reference"))?,
            lambda1: real(f[3])?,
            lambda2: real(f[4])?,
            bound: real(f[5])?,
            wall_time: None,
        });
    }
    Ok(out)
}

fn parse_error(path: &Path, line: usize, msg: &str) -> Error {
    Error::Parse(format!("{}:{line}: {msg}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(i: u64, bound: f64) -> CampaignRecord {
        CampaignRecord {
            sample_index: i,
            substream_seed: substream_seed(DEFAULT_SEED, i),
            reference: ReferenceTag::Bell,
            lambda1: 2.0 * bound,
            lambda2: 0.0,
            bound,
            wall_time: None,
        }
    }

    #[test]
    fn histogram_edges() {
        let h = histogram(&[rec(0, 0.0)], 2).unwrap();
        assert_eq!(h.iter().map(|b| b.count).collect::<Vec<_>>(), vec![1, 0]);
        let h = histogram(&[rec(0, 0.5)], 2).unwrap();
        assert_eq!(h[1].count, 1);
        assert_eq!(h[1].lower, 0.25);
        assert!(histogram(&[], 0).is_err());
    }

    #[test]
    fn histogram_grid() {
        let records: Vec<_> = (0..10).map(|k| rec(k, 0.05 * k as f64)).collect();
        let h = histogram(&records, 5).unwrap();
        // Bins of width 0.1: {0, .05}, {.1, .15}, ... with float rounding at .15 and .35.
        let counts: Vec<usize> = h.iter().map(|b| b.count).collect();
        let mut expected = vec![0; 5];
        for r in &records {
            expected[((r.bound / 0.1).floor() as usize).min(4)] += 1;
        }
        assert_eq!(counts, expected);
        assert_eq!(counts.iter().sum::<usize>(), 10);
    }

    #[test]
    fn record_line_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let r = CampaignRecord {
            lambda1: 1.0 / 3.0,
            lambda2: 0.1,
            bound: 0.5 * (1.0 / 3.0 - 0.1),
            ..rec(0, 0.0)
        };
        std::fs::write(&path, format!("{}\n{}\n0,0x12", HEADER.join(","), format_record(&r))).unwrap();
        assert_eq!(read_records(&path).unwrap(), vec![r]);
    }

    #[test]
    fn summary_stats() {
        let records: Vec<_> = [0.1, 0.2, 0.45].iter().enumerate().map(|(i, &b)| rec(i as u64, b)).collect();
        let s = summarize(&records, 10).unwrap();
        assert_eq!(s.samples, 3);
        assert!((s.mean - 0.25).abs() < 1e-15);
        assert_eq!((s.min, s.max), (0.1, 0.45));
    }

    #[test]
    fn config_rejects_zero_samples() {
        let cfg = CampaignConfig {
            samples: 0,
            ..Default::default()
        };
        assert!(matches!(run_campaign(&cfg), Err(Error::Config(_))));
    }
}
