//! Analysis toolkit for competition rankings.
//!
//! Computes segmentation metrics (DSC, HD, HD95) between binary masks,
//! produces leaderboards from per-case result tables under configurable
//! aggregation schemes, quantifies how fragile those leaderboards are under
//! resampling, metric choice, aggregation choice, observer choice and
//! missing-data manipulation, and validates challenge-design documents
//! against a 53-parameter reporting schema.
//!
//! The resampling loops run on rayon when the `parallel` feature (default)
//! is enabled; results are bit-identical across thread counts and with the
//! feature disabled.
//!
//! ```
//! use ranklab::{rank, AggregationFamily, MetricId, RankingScheme, ResultTable};
//!
//! let mut builder = ResultTable::builder();
//! for (algo, values) in [("A1", [0.7, 0.7, 0.7]), ("A2", [0.9, 0.9, 0.1])] {
//!     for (case, v) in values.iter().enumerate() {
//!         builder.record(algo, &format!("c{case}"), &MetricId::dsc(), Some(*v))?;
//!     }
//! }
//! let table = builder.build()?;
//!
//! // aggregate-then-rank and rank-then-aggregate crown different winners
//! let metric_based = RankingScheme::default_for(MetricId::dsc());
//! let case_based = metric_based.clone().with_family(AggregationFamily::CaseBased);
//! assert_eq!(rank(&table, &metric_based)?.winners(), vec!["A1".to_string()]);
//! assert_eq!(rank(&table, &case_based)?.winners(), vec!["A2".to_string()]);
//! # Ok::<(), ranklab::Error>(())
//! ```

pub mod error;
pub mod mask;
pub mod metrics;
mod parallel;
pub mod ranking;
pub mod report;
pub mod robustness;
pub mod schema;
pub mod stats;
pub mod table;

pub use error::{Error, Result};
pub use mask::LabelMask;
pub use metrics::{dsc, extract_boundary, hausdorff, hd95, MetricId, MetricValue};
pub use parallel::parallelism_enabled;
pub use ranking::{
    aggregate, assign_ranks, rank, rank_case_based, rank_metric_based, rank_multi_metric,
    AggregationFamily, AggregationOperator, MissingPolicy, RankEntry, Ranking, RankingScheme,
    RankingTarget, TieMethod,
};
pub use robustness::{
    bootstrap_stability, compare_scheme_stability, inclusion_check, kendall_tau,
    leave_one_out_stability, missing_data_audit, observer_ranking_comparison, AuditFinding,
    BootstrapConfig, Eligibility, ObserverComparison, SchemeComparison, StabilityReport,
};
pub use schema::{
    coverage_stats, ChallengeDescription, CompletenessReport, CoverageBand, ParameterRegistry,
};
pub use stats::{tau_b, wilcoxon_signed_rank, WilcoxonOutcome};
pub use table::{MetricSpec, Orientation, ResultTable, ResultTableBuilder};
