//! `metrics`: evaluate mask predictions against references and write a
//! results table.
//!
//! Layout: `--ref` holds one `<case>.mask` container per case; `--pred`
//! holds one subdirectory per algorithm, each with `<case>.mask` files.
//! A missing prediction file, like an undefined distance on an empty mask,
//! becomes a missing value in the table.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Args;
use ranklab::metrics::{dsc, hausdorff_with, hd95_with, DistanceOptions};
use ranklab::table::ResultTable;
use ranklab::{LabelMask, MetricId};

use crate::args::SurfaceArg;
use crate::output::{build_report, digest_file, emit_report};

#[derive(Debug, Args)]
pub struct MetricsCmd {
    /// Directory of reference masks (one <case>.mask per case)
    #[arg(long = "ref")]
    pub reference: PathBuf,

    /// Directory of predictions (one subdirectory per algorithm)
    #[arg(long)]
    pub pred: PathBuf,

    /// Output results table CSV
    #[arg(long)]
    pub out: PathBuf,

    /// Point set the distance metrics are evaluated on
    #[arg(long, value_enum, default_value = "boundary")]
    pub surface: SurfaceArg,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn mask_files(dir: &Path) -> anyhow::Result<BTreeMap<String, PathBuf>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) == Some("mask") {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.insert(stem, path);
        }
    }
    anyhow::ensure!(!out.is_empty(), "no .mask files in {}", dir.display());
    Ok(out)
}

fn algorithm_dirs(dir: &Path) -> anyhow::Result<BTreeMap<String, PathBuf>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if path.is_dir() {
            let name = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.insert(name, path);
        }
    }
    anyhow::ensure!(
        !out.is_empty(),
        "no per-algorithm subdirectories in {}",
        dir.display()
    );
    Ok(out)
}

pub fn run(cmd: &MetricsCmd) -> anyhow::Result<()> {
    let opts = DistanceOptions::from(cmd.surface);
    let references = mask_files(&cmd.reference)?;
    let algorithms = algorithm_dirs(&cmd.pred)?;

    let mut digests = Vec::new();
    let mut builder = ResultTable::builder();
    let mut evaluated = 0usize;
    let mut missing = 0usize;
    for (case, ref_path) in &references {
        let reference = LabelMask::read(ref_path)?;
        digests.push(digest_file(ref_path)?);
        for (algorithm, dir) in &algorithms {
            let pred_path = dir.join(format!("{case}.mask"));
            if !pred_path.exists() {
                missing += 1;
                builder.record(algorithm, case, &MetricId::dsc(), None)?;
                builder.record(algorithm, case, &MetricId::hd(), None)?;
                builder.record(algorithm, case, &MetricId::hd95(), None)?;
                continue;
            }
            let pred = LabelMask::read(&pred_path)?;
            digests.push(digest_file(&pred_path)?);
            builder.record(
                algorithm,
                case,
                &MetricId::dsc(),
                dsc(&pred, &reference)?.value(),
            )?;
            builder.record(
                algorithm,
                case,
                &MetricId::hd(),
                hausdorff_with(&pred, &reference, &opts)?.value(),
            )?;
            builder.record(
                algorithm,
                case,
                &MetricId::hd95(),
                hd95_with(&pred, &reference, &opts)?.value(),
            )?;
            evaluated += 1;
        }
    }
    let table = builder.build()?;
    table.to_csv_path(&cmd.out)?;

    let report = build_report(
        "metrics",
        digests,
        serde_json::json!({ "surface": opts.surface }),
        serde_json::json!({
            "algorithms": table.algorithms(),
            "cases": table.cases(),
            "pairs_evaluated": evaluated,
            "predictions_missing": missing,
            "table": cmd.out.display().to_string(),
        }),
    );
    emit_report(&report, cmd.report.as_deref())
}
