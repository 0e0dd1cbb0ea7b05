//! Report files written by the `sigmat` command line tool.
//!
//! Every JSON file holds one [`ReportFile`]: the [`RunManifest`] describing
//! the invocation plus the reports it produced. CSV summaries use the fixed
//! column set in [`CSV_HEADER`].

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sigmat::extremal::{ExtremalReport, Verdict};
use sigmat::TIE_TOLERANCE;

pub const CSV_HEADER: [&str; 6] = ["n", "f", "optimum", "optimizer_count", "runner_up_margin", "verdict"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentRecord {
    pub label: String,
    pub exponent: String,
    pub f: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainRecord {
    pub label: String,
    pub candidate_count: u128,
    pub sequences_scanned: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub label: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub exponents: Vec<ExponentRecord>,
    pub tie_tolerance: f64,
    pub domain_sizes: Vec<DomainRecord>,
    pub engine_version: String,
    pub timestamp: String,
    pub verdicts: Vec<VerdictRecord>,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>, reports: &[ExtremalReport]) -> Self {
        RunManifest {
            command_line,
            exponents: reports
                .iter()
                .map(|r| ExponentRecord {
                    label: r.label.clone(),
                    exponent: r.exponent.to_string(),
                    f: r.f,
                })
                .collect(),
            tie_tolerance: TIE_TOLERANCE,
            domain_sizes: reports
                .iter()
                .map(|r| DomainRecord {
                    label: r.label.clone(),
                    candidate_count: r.candidate_count,
                    sequences_scanned: r.sequences_scanned,
                })
                .collect(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            verdicts: reports
                .iter()
                .map(|r| VerdictRecord {
                    label: r.label.clone(),
                    verdict: r.verdict,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub manifest: RunManifest,
    pub reports: Vec<ExtremalReport>,
}

impl ReportFile {
    pub fn write(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = std::io::BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Writes the fixed-column summary for `reports` as RFC-4180 CSV.
pub fn write_csv<'a>(path: &Path, reports: impl IntoIterator<Item = &'a ExtremalReport>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.domain.n.to_string(),
            r.f.to_string(),
            r.optimum.value.to_string(),
            r.optimizers.len().to_string(),
            r.runner_up_margin.map(|m| m.to_string()).unwrap_or_default(),
            r.verdict.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
