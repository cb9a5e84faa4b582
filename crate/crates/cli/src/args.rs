//! Shared command-line argument groups and their conversion into library
//! configuration.

use clap::{Args, ValueEnum};
use ranklab::metrics::{DistanceOptions, SurfaceSource};
use ranklab::ranking::{
    AggregationFamily, AggregationOperator, MissingPolicy, RankingScheme, RankingTarget, TieMethod,
};
use ranklab::report::WhiskerRule;
use ranklab::MetricId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    MetricBased,
    CaseBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Mean,
    Median,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TiesArg {
    MinCompetition,
    Fractional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MissingArg {
    Ignore,
    WorstValue,
    LastRank,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhiskersArg {
    Median,
    Quartile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Boundary,
    Foreground,
}

impl From<FamilyArg> for AggregationFamily {
    fn from(v: FamilyArg) -> Self {
        match v {
            FamilyArg::MetricBased => AggregationFamily::MetricBased,
            FamilyArg::CaseBased => AggregationFamily::CaseBased,
        }
    }
}

impl From<OpArg> for AggregationOperator {
    fn from(v: OpArg) -> Self {
        match v {
            OpArg::Mean => AggregationOperator::Mean,
            OpArg::Median => AggregationOperator::Median,
        }
    }
}

impl From<TiesArg> for TieMethod {
    fn from(v: TiesArg) -> Self {
        match v {
            TiesArg::MinCompetition => TieMethod::MinCompetition,
            TiesArg::Fractional => TieMethod::Fractional,
        }
    }
}

impl From<MissingArg> for MissingPolicy {
    fn from(v: MissingArg) -> Self {
        match v {
            MissingArg::Ignore => MissingPolicy::Ignore,
            MissingArg::WorstValue => MissingPolicy::WorstValue,
            MissingArg::LastRank => MissingPolicy::LastRank,
            MissingArg::Reject => MissingPolicy::Reject,
        }
    }
}

impl From<WhiskersArg> for WhiskerRule {
    fn from(v: WhiskersArg) -> Self {
        match v {
            WhiskersArg::Median => WhiskerRule::MedianAnchored,
            WhiskersArg::Quartile => WhiskerRule::QuartileAnchored,
        }
    }
}

impl From<SurfaceArg> for DistanceOptions {
    fn from(v: SurfaceArg) -> Self {
        DistanceOptions {
            surface: match v {
                SurfaceArg::Boundary => SurfaceSource::Boundary,
                SurfaceArg::Foreground => SurfaceSource::Foreground,
            },
        }
    }
}

/// Ranking-scheme flags shared by every ranking-flavored command.
#[derive(Debug, Clone, Args)]
pub struct SchemeArgs {
    /// Metric the ranking is computed on (e.g. DSC, HD, HD95)
    #[arg(long)]
    pub metric: Option<String>,

    /// Comma-separated metric list for a multi-metric composite ranking
    #[arg(long, value_delimiter = ',', conflicts_with = "metric")]
    pub metrics: Vec<String>,

    /// Aggregation family: aggregate-then-rank or rank-then-aggregate
    #[arg(long, value_enum, default_value = "metric-based")]
    pub family: FamilyArg,

    /// Aggregation operator
    #[arg(long = "op", value_enum, default_value = "mean")]
    pub op: OpArg,

    /// Tie handling for the final ranks
    #[arg(long, value_enum, default_value = "min-competition")]
    pub ties: TiesArg,

    /// Missing-value policy
    #[arg(long, value_enum, default_value = "ignore")]
    pub missing: MissingArg,
}

impl SchemeArgs {
    pub fn to_scheme(&self) -> anyhow::Result<RankingScheme> {
        let target = match (&self.metric, self.metrics.as_slice()) {
            (Some(m), []) => RankingTarget::SingleMetric(MetricId::new(m)),
            (None, []) => anyhow::bail!("either --metric or --metrics is required"),
            (None, [single]) => RankingTarget::SingleMetric(MetricId::new(single)),
            (None, many) => RankingTarget::MultiMetric(many.iter().map(MetricId::new).collect()),
            (Some(_), _) => unreachable!("clap conflicts_with enforces exclusivity"),
        };
        Ok(RankingScheme {
            family: self.family.into(),
            operator: self.op.into(),
            target,
            tie_method: self.ties.into(),
            missing_policy: self.missing.into(),
        })
    }
}

/// Bootstrap flags shared by `robustness` and `compare-schemes`.
#[derive(Debug, Clone, Copy, Args)]
pub struct BootstrapArgs {
    /// Number of bootstrap samples
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,

    /// Resampling seed; echoed in the report for reproducibility
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Fraction of resamples a non-winner must win to count as a usurper
    #[arg(long, default_value_t = 0.01)]
    pub usurper_fraction: f64,
}

impl BootstrapArgs {
    pub fn to_config(self) -> ranklab::BootstrapConfig {
        ranklab::BootstrapConfig {
            samples: self.samples,
            seed: self.seed,
            usurper_min_fraction: self.usurper_fraction,
        }
    }
}
