//! Report assembly and emission: input digests, the JSON report envelope,
//! and flat plot-data CSVs whose numbers match the report byte for byte.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use ranklab::report::{round_numbers, AnalysisReport, InputDigest};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn digest_file(path: &Path) -> anyhow::Result<InputDigest> {
    let bytes = std::fs::read(path).with_context(|| format!("reading input {}", path.display()))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: format!("{:x}", hasher.finalize()),
    })
}

pub fn digest_files(paths: &[PathBuf]) -> anyhow::Result<Vec<InputDigest>> {
    paths.iter().map(|p| digest_file(p)).collect()
}

/// Builds the report envelope with payload numbers already rounded, so any
/// CSV derived from `report.results` carries exactly the numbers the JSON
/// shows.
pub fn build_report(
    command: &str,
    inputs: Vec<InputDigest>,
    config: Value,
    mut results: Value,
) -> AnalysisReport {
    round_numbers(&mut results);
    AnalysisReport {
        tool: "ranklab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        inputs,
        config,
        results,
    }
}

/// Writes the report to `--out`, or stdout when absent.
pub fn emit_report(report: &AnalysisReport, out: Option<&Path>) -> anyhow::Result<()> {
    let text = report.to_json_pretty();
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing report {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// One plot-data row: series name, key, value taken from the rounded report.
pub struct PlotRow {
    pub series: String,
    pub key: String,
    pub value: String,
}

/// JSON-exact rendering of a report number for CSV cells.
pub fn render_value(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("scalar renders"),
    }
}

pub fn write_plot_csv(path: &Path, rows: &[PlotRow]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path)
        .with_context(|| format!("writing plot data {}", path.display()))?;
    w.write_record(["series", "key", "value"])?;
    for row in rows {
        w.write_record([&row.series, &row.key, &row.value])?;
    }
    w.flush()?;
    Ok(())
}

/// Plot rows for a stability report payload (`results.report` of the
/// robustness and loo commands).
pub fn stability_plot_rows(results: &Value) -> Vec<PlotRow> {
    let report = &results["report"];
    let mut rows = Vec::new();
    for field in ["winner_stability", "usurper_fraction"] {
        rows.push(PlotRow {
            series: field.into(),
            key: String::new(),
            value: render_value(&report[field]),
        });
    }
    if let Some(freqs) = report["rank_one_frequency"].as_array() {
        for f in freqs {
            rows.push(PlotRow {
                series: "rank_one_frequency".into(),
                key: f["algorithm"].as_str().unwrap_or_default().to_string(),
                value: render_value(&f["frequency"]),
            });
        }
    }
    if let Some(taus) = report["taus"].as_array() {
        for (i, tau) in taus.iter().enumerate() {
            rows.push(PlotRow {
                series: "tau".into(),
                key: i.to_string(),
                value: render_value(tau),
            });
        }
    }
    rows
}
