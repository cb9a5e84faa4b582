//! Batch command-line surface for the ranking analysis toolkit.
//!
//! Every command reads its inputs, writes an analysis report (JSON, with
//! the full configuration echoed) and exits 0; failures print a single
//! machine-readable JSON line on stderr and exit nonzero: 2 for input
//! problems, 3 for violated analysis preconditions, 1 otherwise.

mod args;
mod commands;
mod output;

use clap::Parser;

#[derive(Parser)]
#[command(
    name = "ranklab",
    version,
    about = "Competition ranking analysis: metrics, rankings, robustness, reporting-schema validation"
)]
enum Cli {
    /// Compute a ranking from a results table
    Rank(commands::rank::RankCmd),
    /// Bootstrap winner-stability analysis
    Robustness(commands::stability::RobustnessCmd),
    /// Leave-one-out winner-stability analysis
    Loo(commands::stability::LooCmd),
    /// Audit how far algorithms could climb by withholding poor cases
    AuditMissing(commands::audit::AuditCmd),
    /// Rank against multiple observers' references and compare
    CompareObservers(commands::compare::CompareObserversCmd),
    /// Compare the bootstrap stability of two ranking schemes across tasks
    CompareSchemes(commands::compare::CompareSchemesCmd),
    /// Evaluate segmentation masks and write a results table
    Metrics(commands::masks::MetricsCmd),
    /// Validate a challenge description against the reporting schema
    ValidateSpec(commands::schema::ValidateSpecCmd),
    /// Per-parameter reporting coverage over a corpus of descriptions
    Coverage(commands::schema::CoverageCmd),
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match cli {
        Cli::Rank(cmd) => commands::rank::run(cmd),
        Cli::Robustness(cmd) => commands::stability::run_robustness(cmd),
        Cli::Loo(cmd) => commands::stability::run_loo(cmd),
        Cli::AuditMissing(cmd) => commands::audit::run(cmd),
        Cli::CompareObservers(cmd) => commands::compare::run_compare_observers(cmd),
        Cli::CompareSchemes(cmd) => commands::compare::run_compare_schemes(cmd),
        Cli::Metrics(cmd) => commands::masks::run(cmd),
        Cli::ValidateSpec(cmd) => commands::schema::run_validate(cmd),
        Cli::Coverage(cmd) => commands::schema::run_coverage(cmd),
    }
}

/// (error class, exit code) for a failure.
fn classify(err: &anyhow::Error) -> (&'static str, i32) {
    if let Some(lib) = err.downcast_ref::<ranklab::Error>() {
        let class = lib.class();
        let code = match lib {
            ranklab::Error::NotEligible(_)
            | ranklab::Error::InvalidScheme(_)
            | ranklab::Error::MetricUndefined(_)
            | ranklab::Error::AggregationUndefined(_)
            | ranklab::Error::TauUndefined(_) => 3,
            _ => 2,
        };
        return (class, code);
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return ("io-error", 2);
    }
    ("invalid-input", 2)
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        let (class, code) = classify(&err);
        eprintln!(
            "{}",
            serde_json::json!({ "error": class, "message": format!("{err:#}") })
        );
        std::process::exit(code);
    }
}
