//! `rank`: compute one ranking from a results table.

use std::path::PathBuf;

use clap::Args;
use ranklab::table::{MetricSpec, ResultTable};

use crate::args::SchemeArgs;
use crate::output::{build_report, digest_files, emit_report};

#[derive(Debug, Args)]
pub struct RankCmd {
    /// Results table CSV (`algorithm,case,metric,value`)
    #[arg(long)]
    pub results: PathBuf,

    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cmd: &RankCmd) -> anyhow::Result<()> {
    let scheme = cmd.scheme.to_scheme()?;
    let table = ResultTable::from_csv_path(&cmd.results, &MetricSpec::builtin())?;
    let ranking = ranklab::rank(&table, &scheme)?;
    let report = build_report(
        "rank",
        digest_files(std::slice::from_ref(&cmd.results))?,
        serde_json::json!({ "scheme": scheme }),
        serde_json::json!({ "ranking": ranking }),
    );
    emit_report(&report, cmd.out.as_deref())
}
