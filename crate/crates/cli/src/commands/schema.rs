//! `validate-spec` and `coverage`: challenge-description documents against
//! the 53-parameter reporting schema.

use std::path::PathBuf;

use clap::Args;
use ranklab::schema::{completeness, coverage_stats, ChallengeDescription, ParameterRegistry};

use crate::output::{
    build_report, digest_files, emit_report, render_value, write_plot_csv, PlotRow,
};

#[derive(Debug, Args)]
pub struct ValidateSpecCmd {
    /// Challenge description JSON document
    #[arg(long, required_unless_present = "emit_registry")]
    pub description: Option<PathBuf>,

    /// Print the embedded parameter registry instead of validating
    #[arg(long)]
    pub emit_registry: bool,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_validate(cmd: &ValidateSpecCmd) -> anyhow::Result<()> {
    if cmd.emit_registry {
        let text = ParameterRegistry::embedded_json();
        match &cmd.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        return Ok(());
    }
    let path = cmd.description.as_ref().expect("clap enforces presence");
    let description = ChallengeDescription::from_json_path(path)?;
    let report_payload = completeness(&description);
    let report = build_report(
        "validate-spec",
        digest_files(std::slice::from_ref(path))?,
        serde_json::json!({
            "registry_version": ParameterRegistry::builtin().version,
        }),
        serde_json::json!({ "completeness": report_payload }),
    );
    emit_report(&report, cmd.out.as_deref())
}

#[derive(Debug, Args)]
pub struct CoverageCmd {
    /// Challenge description JSON documents; pass the flag once per document
    #[arg(long = "descriptions", required = true, num_args = 1)]
    pub descriptions: Vec<PathBuf>,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Flat per-parameter coverage CSV
    #[arg(long)]
    pub plot_csv: Option<PathBuf>,
}

pub fn run_coverage(cmd: &CoverageCmd) -> anyhow::Result<()> {
    let descriptions: Vec<ChallengeDescription> = cmd
        .descriptions
        .iter()
        .map(ChallengeDescription::from_json_path)
        .collect::<ranklab::Result<_>>()?;
    let coverage = coverage_stats(&descriptions)?;
    let report = build_report(
        "coverage",
        digest_files(&cmd.descriptions)?,
        serde_json::json!({
            "documents": cmd.descriptions.len(),
            "registry_version": ParameterRegistry::builtin().version,
        }),
        serde_json::json!({ "coverage": coverage }),
    );
    if let Some(plot) = &cmd.plot_csv {
        let rows: Vec<PlotRow> = report.results["coverage"]
            .as_array()
            .map(|entries| {
                entries
                    .iter()
                    .map(|e| PlotRow {
                        series: "coverage_pct".into(),
                        key: e["key"].as_str().unwrap_or_default().to_string(),
                        value: render_value(&e["pct"]),
                    })
                    .collect()
            })
            .unwrap_or_default();
        write_plot_csv(plot, &rows)?;
    }
    emit_report(&report, cmd.out.as_deref())
}
