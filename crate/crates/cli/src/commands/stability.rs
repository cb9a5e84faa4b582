//! `robustness` and `loo`: resampling-based winner-stability analyses.

use std::path::PathBuf;

use clap::Args;
use ranklab::report::boxplot_summary_with;
use ranklab::robustness::{bootstrap_stability, leave_one_out_stability, StabilityReport};
use ranklab::table::{MetricSpec, ResultTable};

use crate::args::{BootstrapArgs, SchemeArgs, WhiskersArg};
use crate::output::{build_report, digest_files, emit_report, stability_plot_rows, write_plot_csv};

#[derive(Debug, Args)]
pub struct RobustnessCmd {
    /// Results table CSV
    #[arg(long)]
    pub results: PathBuf,

    #[command(flatten)]
    pub scheme: SchemeArgs,

    #[command(flatten)]
    pub bootstrap: BootstrapArgs,

    /// Whisker rule for the tau distribution summary
    #[arg(long, value_enum, default_value = "median")]
    pub whiskers: WhiskersArg,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Flat plot-data CSV mirroring the report numbers
    #[arg(long)]
    pub plot_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LooCmd {
    /// Results table CSV
    #[arg(long)]
    pub results: PathBuf,

    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Whisker rule for the tau distribution summary
    #[arg(long, value_enum, default_value = "median")]
    pub whiskers: WhiskersArg,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Flat plot-data CSV mirroring the report numbers
    #[arg(long)]
    pub plot_csv: Option<PathBuf>,
}

fn results_payload(
    stability: &StabilityReport,
    whiskers: WhiskersArg,
) -> anyhow::Result<serde_json::Value> {
    let defined: Vec<f64> = stability.taus.iter().flatten().copied().collect();
    let tau_summary = if defined.is_empty() {
        serde_json::Value::Null
    } else {
        serde_json::to_value(boxplot_summary_with(&defined, whiskers.into())?)?
    };
    Ok(serde_json::json!({
        "report": stability,
        "tau_summary": tau_summary,
    }))
}

fn emit(
    command: &str,
    results_path: &PathBuf,
    config: serde_json::Value,
    stability: &StabilityReport,
    whiskers: WhiskersArg,
    out: Option<&std::path::Path>,
    plot_csv: Option<&std::path::Path>,
) -> anyhow::Result<()> {
    let report = build_report(
        command,
        digest_files(std::slice::from_ref(results_path))?,
        config,
        results_payload(stability, whiskers)?,
    );
    if let Some(plot) = plot_csv {
        write_plot_csv(plot, &stability_plot_rows(&report.results))?;
    }
    emit_report(&report, out)
}

pub fn run_robustness(cmd: &RobustnessCmd) -> anyhow::Result<()> {
    let scheme = cmd.scheme.to_scheme()?;
    let cfg = cmd.bootstrap.to_config();
    let table = ResultTable::from_csv_path(&cmd.results, &MetricSpec::builtin())?;
    let stability = bootstrap_stability(&table, &scheme, &cfg)?;
    let config = serde_json::json!({
        "scheme": scheme,
        "bootstrap": cfg,
        "whiskers": cmd.whiskers.to_rule_name(),
    });
    emit(
        "robustness",
        &cmd.results,
        config,
        &stability,
        cmd.whiskers,
        cmd.out.as_deref(),
        cmd.plot_csv.as_deref(),
    )
}

pub fn run_loo(cmd: &LooCmd) -> anyhow::Result<()> {
    let scheme = cmd.scheme.to_scheme()?;
    let table = ResultTable::from_csv_path(&cmd.results, &MetricSpec::builtin())?;
    let stability = leave_one_out_stability(&table, &scheme)?;
    let config = serde_json::json!({
        "scheme": scheme,
        "whiskers": cmd.whiskers.to_rule_name(),
    });
    emit(
        "loo",
        &cmd.results,
        config,
        &stability,
        cmd.whiskers,
        cmd.out.as_deref(),
        cmd.plot_csv.as_deref(),
    )
}

impl WhiskersArg {
    fn to_rule_name(self) -> &'static str {
        match self {
            WhiskersArg::Median => "median-anchored",
            WhiskersArg::Quartile => "quartile-anchored",
        }
    }
}
