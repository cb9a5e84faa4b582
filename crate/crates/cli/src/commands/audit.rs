//! `audit-missing`: the per-algorithm what-if removal of poor cases.

use std::path::PathBuf;

use clap::Args;
use ranklab::ranking::{AggregationOperator, RankingScheme};
use ranklab::robustness::missing_data_audit;
use ranklab::table::{MetricSpec, ResultTable};
use ranklab::MetricId;

use crate::args::OpArg;
use crate::output::{build_report, digest_files, emit_report};

#[derive(Debug, Args)]
pub struct AuditCmd {
    /// Results table CSV
    #[arg(long)]
    pub results: PathBuf,

    /// Higher-is-better metric to audit (e.g. DSC)
    #[arg(long, default_value = "DSC")]
    pub metric: String,

    /// Values below this threshold are removed in the what-if scenario
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,

    /// Aggregation operator of the audited scheme
    #[arg(long = "op", value_enum, default_value = "mean")]
    pub op: OpArg,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cmd: &AuditCmd) -> anyhow::Result<()> {
    // the audit targets the exploitable configuration: metric-based
    // aggregation with missing values ignored
    let scheme = RankingScheme::default_for(MetricId::new(&cmd.metric))
        .with_operator(AggregationOperator::from(cmd.op));
    let table = ResultTable::from_csv_path(&cmd.results, &MetricSpec::builtin())?;
    let original = ranklab::rank(&table, &scheme)?;
    let findings = missing_data_audit(&table, &scheme, cmd.threshold)?;
    let manipulable = findings
        .iter()
        .filter(|f| f.reached_rank_1 && f.original_rank != 1.0)
        .count();
    let report = build_report(
        "audit-missing",
        digest_files(std::slice::from_ref(&cmd.results))?,
        serde_json::json!({ "scheme": scheme, "threshold": cmd.threshold }),
        serde_json::json!({
            "original_ranking": original,
            "findings": findings,
            "non_winners_reaching_rank_1": manipulable,
        }),
    );
    emit_report(&report, cmd.out.as_deref())
}
