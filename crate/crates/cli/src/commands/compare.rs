//! `compare-schemes` and `compare-observers`.

use std::path::{Path, PathBuf};

use clap::Args;
use ranklab::ranking::RankingScheme;
use ranklab::robustness::{compare_scheme_stability, observer_ranking_comparison};
use ranklab::table::{MetricSpec, ResultTable};
use ranklab::MetricId;

use crate::args::{BootstrapArgs, FamilyArg, MissingArg, OpArg, SchemeArgs, TiesArg};
use crate::output::{build_report, digest_files, emit_report};

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_named_tables(paths: &[PathBuf]) -> anyhow::Result<Vec<(String, ResultTable)>> {
    paths
        .iter()
        .map(|p| {
            Ok((
                stem(p),
                ResultTable::from_csv_path(p, &MetricSpec::builtin())?,
            ))
        })
        .collect()
}

#[derive(Debug, Args)]
pub struct CompareSchemesCmd {
    /// Results table CSV per task; pass the flag once per task
    #[arg(long = "results", required = true, num_args = 1)]
    pub results: Vec<PathBuf>,

    /// Metric both schemes rank on
    #[arg(long)]
    pub metric: String,

    /// Aggregation family of scheme A
    #[arg(long, value_enum, default_value = "metric-based")]
    pub family_a: FamilyArg,

    /// Aggregation operator of scheme A
    #[arg(long, value_enum, default_value = "mean")]
    pub op_a: OpArg,

    /// Aggregation family of scheme B
    #[arg(long, value_enum, default_value = "metric-based")]
    pub family_b: FamilyArg,

    /// Aggregation operator of scheme B
    #[arg(long, value_enum, default_value = "median")]
    pub op_b: OpArg,

    /// Tie handling shared by both schemes
    #[arg(long, value_enum, default_value = "min-competition")]
    pub ties: TiesArg,

    /// Missing-value policy shared by both schemes
    #[arg(long, value_enum, default_value = "ignore")]
    pub missing: MissingArg,

    #[command(flatten)]
    pub bootstrap: BootstrapArgs,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl CompareSchemesCmd {
    fn scheme(&self, family: FamilyArg, op: OpArg) -> RankingScheme {
        RankingScheme {
            family: family.into(),
            operator: op.into(),
            target: ranklab::RankingTarget::SingleMetric(MetricId::new(&self.metric)),
            tie_method: self.ties.into(),
            missing_policy: self.missing.into(),
        }
    }
}

pub fn run_compare_schemes(cmd: &CompareSchemesCmd) -> anyhow::Result<()> {
    let scheme_a = cmd.scheme(cmd.family_a, cmd.op_a);
    let scheme_b = cmd.scheme(cmd.family_b, cmd.op_b);
    let cfg = cmd.bootstrap.to_config();
    let tasks = load_named_tables(&cmd.results)?;
    let comparison = compare_scheme_stability(&tasks, &scheme_a, &scheme_b, &cfg)?;
    let report = build_report(
        "compare-schemes",
        digest_files(&cmd.results)?,
        serde_json::json!({
            "scheme_a": scheme_a,
            "scheme_b": scheme_b,
            "bootstrap": cfg,
        }),
        serde_json::json!({ "comparison": comparison }),
    );
    emit_report(&report, cmd.out.as_deref())
}

#[derive(Debug, Args)]
pub struct CompareObserversCmd {
    /// Results table CSV per observer; pass the flag once per observer
    #[arg(long = "results", required = true, num_args = 1)]
    pub results: Vec<PathBuf>,

    /// Observer names matching the --results order (file stems by default)
    #[arg(long, value_delimiter = ',')]
    pub names: Vec<String>,

    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_compare_observers(cmd: &CompareObserversCmd) -> anyhow::Result<()> {
    let scheme = cmd.scheme.to_scheme()?;
    let mut observers = load_named_tables(&cmd.results)?;
    if !cmd.names.is_empty() {
        anyhow::ensure!(
            cmd.names.len() == observers.len(),
            "--names must list one name per --results file"
        );
        for (name, observer) in cmd.names.iter().zip(observers.iter_mut()) {
            observer.0 = name.clone();
        }
    }
    let comparison = observer_ranking_comparison(&observers, &scheme)?;
    let report = build_report(
        "compare-observers",
        digest_files(&cmd.results)?,
        serde_json::json!({ "scheme": scheme }),
        serde_json::json!({ "comparison": comparison }),
    );
    emit_report(&report, cmd.out.as_deref())
}
