//! Rankings over result tables under configurable aggregation schemes.
//!
//! Two aggregation families cover the common leaderboard designs:
//! *metric-based* aggregates each algorithm's metric values over all test
//! cases and then ranks the aggregates; *case-based* ranks the algorithms on
//! every test case and then aggregates the per-case ranks. Multi-metric
//! targets compose either family across metrics: the metric-based composite
//! sums orientation-normalized per-metric aggregates, the case-based
//! composite scores each case by the mean of the per-metric case ranks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::MetricId;
use crate::stats::quantile_sorted;
use crate::table::{MetricSpec, Orientation, ResultTable};

/// Aggregate first and rank, or rank per case and aggregate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationFamily {
    MetricBased,
    CaseBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationOperator {
    Mean,
    Median,
}

/// How tied scores share ranks: `1,2,2,4` or `1,2.5,2.5,4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieMethod {
    MinCompetition,
    Fractional,
}

/// What happens to missing metric values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingPolicy {
    /// Drop missing values before aggregating.
    Ignore,
    /// Substitute the metric's registered worst value.
    WorstValue,
    /// Case-based only: a missing algorithm receives the case's worst rank
    /// (the number of ranked algorithms).
    LastRank,
    /// Exclude any algorithm with missing values from the ranking entirely.
    Reject,
}

/// Single metric, or an ordered multi-metric composite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankingTarget {
    SingleMetric(MetricId),
    MultiMetric(Vec<MetricId>),
}

impl RankingTarget {
    pub fn metric_ids(&self) -> Vec<&MetricId> {
        match self {
            RankingTarget::SingleMetric(m) => vec![m],
            RankingTarget::MultiMetric(ms) => ms.iter().collect(),
        }
    }
}

/// Full configuration of how a ranking is produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingScheme {
    pub family: AggregationFamily,
    pub operator: AggregationOperator,
    pub target: RankingTarget,
    /// Tie handling for the final presented ranks. Intermediate per-case
    /// ranks always use fractional ties to avoid aggregation bias.
    pub tie_method: TieMethod,
    pub missing_policy: MissingPolicy,
}

impl RankingScheme {
    /// The common default: single-metric, metric-based, mean aggregation,
    /// min-competition ties, missing values ignored.
    pub fn default_for(metric: impl Into<MetricId>) -> Self {
        Self {
            family: AggregationFamily::MetricBased,
            operator: AggregationOperator::Mean,
            target: RankingTarget::SingleMetric(metric.into()),
            tie_method: TieMethod::MinCompetition,
            missing_policy: MissingPolicy::Ignore,
        }
    }

    pub fn with_family(mut self, family: AggregationFamily) -> Self {
        self.family = family;
        self
    }

    pub fn with_operator(mut self, operator: AggregationOperator) -> Self {
        self.operator = operator;
        self
    }

    pub fn with_tie_method(mut self, tie_method: TieMethod) -> Self {
        self.tie_method = tie_method;
        self
    }

    pub fn with_missing_policy(mut self, missing_policy: MissingPolicy) -> Self {
        self.missing_policy = missing_policy;
        self
    }

    pub fn with_target(mut self, target: RankingTarget) -> Self {
        self.target = target;
        self
    }
}

/// One ranked algorithm: its aggregate score and final rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub algorithm: String,
    /// Metric-based: aggregated metric value (composite: normalized sum).
    /// Case-based: aggregated per-case rank.
    pub score: f64,
    /// Starts at 1; fractional under fractional tie handling.
    pub rank: f64,
}

/// An algorithm left out of a ranking, with the reason recorded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exclusion {
    pub algorithm: String,
    pub reason: String,
}

/// An ordered rank assignment with ties, plus the scores that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub scheme: RankingScheme,
    /// Sorted best rank first (table order within ties).
    pub entries: Vec<RankEntry>,
    pub excluded: Vec<Exclusion>,
}

impl Ranking {
    /// Algorithms holding the best (minimum) rank.
    pub fn winners(&self) -> Vec<String> {
        let Some(best) = self.entries.iter().map(|e| e.rank).min_by(f64::total_cmp) else {
            return Vec::new();
        };
        self.entries
            .iter()
            .filter(|e| e.rank == best)
            .map(|e| e.algorithm.clone())
            .collect()
    }

    pub fn rank_of(&self, algorithm: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.algorithm == algorithm)
            .map(|e| e.rank)
    }

    /// True when both rankings assign every algorithm the same rank.
    pub fn same_assignment(&self, other: &Ranking) -> bool {
        if self.entries.len() != other.entries.len() {
            return false;
        }
        self.entries
            .iter()
            .all(|e| other.rank_of(&e.algorithm) == Some(e.rank))
    }
}

/// Mean or median of a nonempty value list.
pub fn aggregate(values: &[f64], operator: AggregationOperator) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::AggregationUndefined(
            "cannot aggregate an empty value list".into(),
        ));
    }
    match operator {
        AggregationOperator::Mean => Ok(values.iter().sum::<f64>() / values.len() as f64),
        AggregationOperator::Median => {
            let mut sorted = values.to_vec();
            sorted.sort_by(f64::total_cmp);
            Ok(quantile_sorted(&sorted, 0.5))
        }
    }
}

/// Ranks scores (better score gets the smaller rank) with the given tie rule.
pub fn assign_ranks(
    scores: &[f64],
    orientation: Orientation,
    tie_method: TieMethod,
) -> Result<Vec<f64>> {
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::InvalidInput("scores must be finite".into()));
    }
    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    match orientation {
        Orientation::HigherBetter => order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a])),
        Orientation::LowerBetter => order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b])),
    }
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let rank = match tie_method {
            TieMethod::MinCompetition => (i + 1) as f64,
            TieMethod::Fractional => (i + 1 + j + 1) as f64 / 2.0,
        };
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    Ok(ranks)
}

/// Produces a ranking under the scheme, dispatching on aggregation family.
pub fn rank(table: &ResultTable, scheme: &RankingScheme) -> Result<Ranking> {
    rank_on_cases(table, scheme, &identity_cases(table))
}

/// Metric-based ranking (`scheme.family` must agree).
pub fn rank_metric_based(table: &ResultTable, scheme: &RankingScheme) -> Result<Ranking> {
    if scheme.family != AggregationFamily::MetricBased {
        return Err(Error::InvalidScheme(
            "rank_metric_based requires a metric-based scheme".into(),
        ));
    }
    rank(table, scheme)
}

/// Case-based ranking (`scheme.family` must agree).
pub fn rank_case_based(table: &ResultTable, scheme: &RankingScheme) -> Result<Ranking> {
    if scheme.family != AggregationFamily::CaseBased {
        return Err(Error::InvalidScheme(
            "rank_case_based requires a case-based scheme".into(),
        ));
    }
    rank(table, scheme)
}

/// Multi-metric composite ranking (`scheme.target` must be multi-metric).
pub fn rank_multi_metric(table: &ResultTable, scheme: &RankingScheme) -> Result<Ranking> {
    if !matches!(scheme.target, RankingTarget::MultiMetric(_)) {
        return Err(Error::InvalidScheme(
            "rank_multi_metric requires a multi-metric target".into(),
        ));
    }
    rank(table, scheme)
}

pub(crate) fn identity_cases(table: &ResultTable) -> Vec<usize> {
    (0..table.n_cases()).collect()
}

struct SchemeContext<'a> {
    /// Metric specs in target order, with their positions in the table.
    metrics: Vec<(usize, &'a MetricSpec)>,
}

fn validate_scheme<'a>(
    table: &'a ResultTable,
    scheme: &RankingScheme,
) -> Result<SchemeContext<'a>> {
    let ids = scheme.target.metric_ids();
    if ids.is_empty() {
        return Err(Error::InvalidScheme(
            "composite target needs at least one metric".into(),
        ));
    }
    let mut metrics = Vec::with_capacity(ids.len());
    for id in ids {
        let pos = table
            .metric_specs()
            .iter()
            .position(|s| &s.id == id)
            .ok_or_else(|| Error::InvalidScheme(format!("metric {id} not present in table")))?;
        let spec = &table.metric_specs()[pos];
        if scheme.missing_policy == MissingPolicy::WorstValue && spec.worst_value.is_none() {
            return Err(Error::InvalidScheme(format!(
                "worst-value policy requires a registered worst value for metric {id}"
            )));
        }
        metrics.push((pos, spec));
    }
    if scheme.missing_policy == MissingPolicy::LastRank
        && scheme.family != AggregationFamily::CaseBased
    {
        return Err(Error::InvalidScheme(
            "last-rank policy is only valid for case-based aggregation".into(),
        ));
    }
    Ok(SchemeContext { metrics })
}

/// Ranking over an explicit case multiset; duplicate indices make a case's
/// values enter the aggregation once per occurrence. Resampling analyses
/// enter here.
pub(crate) fn rank_on_cases(
    table: &ResultTable,
    scheme: &RankingScheme,
    cases: &[usize],
) -> Result<Ranking> {
    if cases.is_empty() {
        return Err(Error::InvalidInput("case selection is empty".into()));
    }
    let ctx = validate_scheme(table, scheme)?;

    let mut excluded: Vec<Exclusion> = Vec::new();
    let mut included: Vec<usize> = Vec::new();
    for a in 0..table.n_algorithms() {
        if scheme.missing_policy == MissingPolicy::Reject {
            let missing_somewhere = ctx
                .metrics
                .iter()
                .any(|(m, _)| cases.iter().any(|&c| table.value_at(*m, a, c).is_none()));
            if missing_somewhere {
                excluded.push(Exclusion {
                    algorithm: table.algorithms()[a].clone(),
                    reason: "missing values under reject policy".into(),
                });
                continue;
            }
        }
        included.push(a);
    }

    let (scores, orientation, undefined) = match scheme.family {
        AggregationFamily::MetricBased => {
            metric_based_scores(table, scheme, &ctx, cases, &included)?
        }
        AggregationFamily::CaseBased => case_based_scores(table, scheme, &ctx, cases, &included)?,
    };

    // Algorithms with no usable values are dropped from the ranking, recorded.
    let mut ranked_algos = Vec::new();
    let mut ranked_scores = Vec::new();
    for (i, &a) in included.iter().enumerate() {
        match scores[i] {
            Some(s) => {
                ranked_algos.push(a);
                ranked_scores.push(s);
            }
            None => excluded.push(Exclusion {
                algorithm: table.algorithms()[a].clone(),
                reason: undefined.clone(),
            }),
        }
    }

    let ranks = assign_ranks(&ranked_scores, orientation, scheme.tie_method)?;
    let mut entries: Vec<RankEntry> = ranked_algos
        .iter()
        .zip(ranked_scores.iter().zip(ranks.iter()))
        .map(|(&a, (&score, &rank))| RankEntry {
            algorithm: table.algorithms()[a].clone(),
            score,
            rank,
        })
        .collect();
    let order_of = |name: &str| table.algorithm_pos(name).unwrap_or(usize::MAX);
    entries.sort_by(|x, y| {
        x.rank
            .total_cmp(&y.rank)
            .then_with(|| order_of(&x.algorithm).cmp(&order_of(&y.algorithm)))
    });

    Ok(Ranking {
        scheme: scheme.clone(),
        entries,
        excluded,
    })
}

type ScoreSet = (Vec<Option<f64>>, Orientation, String);

/// Aggregate per algorithm (per metric), then orientation-normalize and sum.
fn metric_based_scores(
    table: &ResultTable,
    scheme: &RankingScheme,
    ctx: &SchemeContext,
    cases: &[usize],
    included: &[usize],
) -> Result<ScoreSet> {
    let single = ctx.metrics.len() == 1;
    let mut scores = Vec::with_capacity(included.len());
    for &a in included {
        let mut total = 0.0;
        let mut defined = true;
        for (m, spec) in &ctx.metrics {
            let mut values = Vec::with_capacity(cases.len());
            for &c in cases {
                match table.value_at(*m, a, c) {
                    Some(v) => values.push(v),
                    None => match scheme.missing_policy {
                        MissingPolicy::Ignore => {}
                        MissingPolicy::WorstValue => {
                            values.push(spec.worst_value.expect("validated"))
                        }
                        // Reject exclusions already applied; LastRank rejected
                        // for this family by validation.
                        MissingPolicy::Reject | MissingPolicy::LastRank => unreachable!(),
                    },
                }
            }
            if values.is_empty() {
                defined = false;
                break;
            }
            let agg = aggregate(&values, scheme.operator)?;
            if single {
                total = agg;
            } else {
                total += match spec.orientation {
                    Orientation::HigherBetter => agg,
                    Orientation::LowerBetter => -agg,
                };
            }
        }
        scores.push(defined.then_some(total));
    }
    let orientation = if single {
        ctx.metrics[0].1.orientation
    } else {
        Orientation::HigherBetter
    };
    Ok((
        scores,
        orientation,
        "no usable values to aggregate".to_string(),
    ))
}

/// Rank per case (fractional ties), then aggregate the per-case ranks.
fn case_based_scores(
    table: &ResultTable,
    scheme: &RankingScheme,
    ctx: &SchemeContext,
    cases: &[usize],
    included: &[usize],
) -> Result<ScoreSet> {
    let universe = included.len() as f64;
    let mut case_ranks: Vec<Vec<f64>> = vec![Vec::new(); included.len()];
    for &c in cases {
        // fractional rank per metric for this case
        let mut metric_ranks: Vec<Vec<Option<f64>>> = Vec::with_capacity(ctx.metrics.len());
        for (m, spec) in &ctx.metrics {
            let mut present: Vec<(usize, f64)> = Vec::new();
            let mut missing: Vec<usize> = Vec::new();
            for (i, &a) in included.iter().enumerate() {
                match table.value_at(*m, a, c) {
                    Some(v) => present.push((i, v)),
                    None => match scheme.missing_policy {
                        MissingPolicy::WorstValue => {
                            present.push((i, spec.worst_value.expect("validated")))
                        }
                        _ => missing.push(i),
                    },
                }
            }
            let values: Vec<f64> = present.iter().map(|(_, v)| *v).collect();
            let ranks = assign_ranks(&values, spec.orientation, TieMethod::Fractional)?;
            let mut row = vec![None; included.len()];
            for ((i, _), r) in present.iter().zip(ranks) {
                row[*i] = Some(r);
            }
            if scheme.missing_policy == MissingPolicy::LastRank {
                for i in missing {
                    row[i] = Some(universe);
                }
            }
            metric_ranks.push(row);
        }

        if ctx.metrics.len() == 1 {
            for (i, r) in metric_ranks[0].iter().enumerate() {
                if let Some(r) = r {
                    case_ranks[i].push(*r);
                }
            }
        } else {
            // composite: score each algorithm by the mean of its metric ranks,
            // then rank the scores for this case
            let mut scored: Vec<(usize, f64)> = Vec::new();
            for i in 0..included.len() {
                let rs: Vec<f64> = metric_ranks.iter().filter_map(|row| row[i]).collect();
                if !rs.is_empty() {
                    scored.push((i, rs.iter().sum::<f64>() / rs.len() as f64));
                }
            }
            let values: Vec<f64> = scored.iter().map(|(_, v)| *v).collect();
            let ranks = assign_ranks(&values, Orientation::LowerBetter, TieMethod::Fractional)?;
            for ((i, _), r) in scored.iter().zip(ranks) {
                case_ranks[*i].push(r);
            }
        }
    }

    let mut scores = Vec::with_capacity(included.len());
    for ranks in &case_ranks {
        if ranks.is_empty() {
            scores.push(None);
        } else {
            scores.push(Some(aggregate(ranks, scheme.operator)?));
        }
    }
    Ok((
        scores,
        Orientation::LowerBetter,
        "no ranked cases to aggregate".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::ResultTableBuilder;

    fn dsc_table(rows: &[(&str, &[f64])]) -> ResultTable {
        let mut b = ResultTable::builder();
        for (algo, vals) in rows {
            for (i, v) in vals.iter().enumerate() {
                b.record(algo, &format!("c{}", i + 1), &MetricId::dsc(), Some(*v))
                    .unwrap();
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn aggregate_examples() {
        assert_eq!(aggregate(&[0.5], AggregationOperator::Mean).unwrap(), 0.5);
        assert_eq!(
            aggregate(&[0.2, 0.4, 0.9], AggregationOperator::Median).unwrap(),
            0.4
        );
        assert_eq!(
            aggregate(&[0.2, 0.4, 0.6, 0.9], AggregationOperator::Median).unwrap(),
            0.5
        );
        assert!(matches!(
            aggregate(&[], AggregationOperator::Mean),
            Err(Error::AggregationUndefined(_))
        ));
    }

    #[test]
    fn assign_ranks_examples() {
        let scores = [0.9, 0.8, 0.8, 0.1];
        assert_eq!(
            assign_ranks(
                &scores,
                Orientation::HigherBetter,
                TieMethod::MinCompetition
            )
            .unwrap(),
            vec![1.0, 2.0, 2.0, 4.0]
        );
        assert_eq!(
            assign_ranks(&scores, Orientation::HigherBetter, TieMethod::Fractional).unwrap(),
            vec![1.0, 2.5, 2.5, 4.0]
        );
        assert_eq!(
            assign_ranks(
                &[5.0, 2.0, 9.0],
                Orientation::LowerBetter,
                TieMethod::MinCompetition
            )
            .unwrap(),
            vec![2.0, 1.0, 3.0]
        );
        assert!(assign_ranks(
            &[1.0, f64::NAN],
            Orientation::HigherBetter,
            TieMethod::Fractional
        )
        .is_err());
    }

    #[test]
    fn metric_based_mean_example() {
        let t = dsc_table(&[("A1", &[0.7, 0.7, 0.7]), ("A2", &[0.9, 0.9, 0.1])]);
        let r = rank_metric_based(&t, &RankingScheme::default_for(MetricId::dsc())).unwrap();
        assert_eq!(r.rank_of("A1"), Some(1.0));
        assert_eq!(r.rank_of("A2"), Some(2.0));
        assert!((r.entries[0].score - 0.7).abs() < 1e-12);
        assert!((r.entries[1].score - 0.6333333333333333).abs() < 1e-12);
        assert_eq!(r.winners(), vec!["A1".to_string()]);
    }

    #[test]
    fn case_based_mean_flips_the_winner() {
        let t = dsc_table(&[("A1", &[0.7, 0.7, 0.7]), ("A2", &[0.9, 0.9, 0.1])]);
        let scheme =
            RankingScheme::default_for(MetricId::dsc()).with_family(AggregationFamily::CaseBased);
        let r = rank_case_based(&t, &scheme).unwrap();
        // per-case ranks: A1 = (2,2,1), A2 = (1,1,2); means 5/3 vs 4/3
        assert!((r.rank_of("A2").unwrap() - 1.0).abs() < 1e-15);
        assert!((r.rank_of("A1").unwrap() - 2.0).abs() < 1e-15);
        let a1 = r.entries.iter().find(|e| e.algorithm == "A1").unwrap();
        let a2 = r.entries.iter().find(|e| e.algorithm == "A2").unwrap();
        assert!((a1.score - 5.0 / 3.0).abs() < 1e-12);
        assert!((a2.score - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_algorithm_ranks_first() {
        let t = dsc_table(&[("only", &[0.1, 0.2])]);
        let r = rank(&t, &RankingScheme::default_for(MetricId::dsc())).unwrap();
        assert_eq!(r.rank_of("only"), Some(1.0));
    }

    #[test]
    fn identical_values_tie_at_rank_one() {
        let t = dsc_table(&[("A", &[0.5, 0.5]), ("B", &[0.5, 0.5]), ("C", &[0.5, 0.5])]);
        for family in [AggregationFamily::MetricBased, AggregationFamily::CaseBased] {
            let scheme = RankingScheme::default_for(MetricId::dsc()).with_family(family);
            let r = rank(&t, &scheme).unwrap();
            assert!(r.entries.iter().all(|e| e.rank == 1.0));
            assert_eq!(r.winners().len(), 3);
        }
    }

    #[test]
    fn dominant_algorithm_wins_case_based() {
        let t = dsc_table(&[
            ("best", &[0.9, 0.8]),
            ("mid", &[0.5, 0.6]),
            ("low", &[0.1, 0.2]),
        ]);
        let scheme =
            RankingScheme::default_for(MetricId::dsc()).with_family(AggregationFamily::CaseBased);
        assert_eq!(
            rank(&t, &scheme).unwrap().winners(),
            vec!["best".to_string()]
        );
    }

    fn two_metric_table() -> ResultTable {
        let mut b = ResultTable::builder();
        let dsc = [("A", [0.9, 0.6]), ("B", [0.8, 0.7]), ("C", [0.5, 0.95])];
        let hd = [("A", [2.0, 4.0]), ("B", [3.0, 1.0]), ("C", [6.0, 2.0])];
        for (algo, vals) in dsc {
            for (i, v) in vals.iter().enumerate() {
                b.record(algo, &format!("c{}", i + 1), &MetricId::dsc(), Some(*v))
                    .unwrap();
            }
        }
        for (algo, vals) in hd {
            for (i, v) in vals.iter().enumerate() {
                b.record(algo, &format!("c{}", i + 1), &MetricId::hd(), Some(*v))
                    .unwrap();
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn composite_metric_sum_hand_walkthrough() {
        // mean DSC: A .75, B .75, C .725; mean HD: A 3, B 2, C 4
        // normalized sums: A -2.25, B -1.25, C -3.275 -> B, A, C
        let t = two_metric_table();
        let scheme = RankingScheme::default_for(MetricId::dsc()).with_target(
            RankingTarget::MultiMetric(vec![MetricId::dsc(), MetricId::hd()]),
        );
        let r = rank_multi_metric(&t, &scheme).unwrap();
        assert_eq!(r.rank_of("B"), Some(1.0));
        assert_eq!(r.rank_of("A"), Some(2.0));
        assert_eq!(r.rank_of("C"), Some(3.0));
        let b = r.entries.iter().find(|e| e.algorithm == "B").unwrap();
        assert!((b.score - (-1.25)).abs() < 1e-12);
    }

    #[test]
    fn composite_case_rank_mean_hand_walkthrough() {
        // c1 metric ranks: A (1,1) B (2,2) C (3,3) -> case ranks A1 B2 C3
        // c2 metric ranks: A (3,3) B (2,1) C (1,2) -> scores A3 B1.5 C1.5
        //   -> case ranks A3, B and C tie at 1.5
        // means: A 2.0, B 1.75, C 2.25 -> B, A, C
        let t = two_metric_table();
        let scheme = RankingScheme::default_for(MetricId::dsc())
            .with_family(AggregationFamily::CaseBased)
            .with_target(RankingTarget::MultiMetric(vec![
                MetricId::dsc(),
                MetricId::hd(),
            ]));
        let r = rank_multi_metric(&t, &scheme).unwrap();
        assert_eq!(r.rank_of("B"), Some(1.0));
        assert_eq!(r.rank_of("A"), Some(2.0));
        assert_eq!(r.rank_of("C"), Some(3.0));
        let b = r.entries.iter().find(|e| e.algorithm == "B").unwrap();
        assert!((b.score - 1.75).abs() < 1e-12);
    }

    #[test]
    fn duplicated_metric_composite_matches_single() {
        let mut b = ResultTableBuilder::with_specs(vec![
            MetricSpec::dsc(),
            MetricSpec::new("DSC2", Orientation::HigherBetter).with_domain(0.0, 1.0),
        ]);
        for (algo, vals) in [("A", [0.9, 0.4]), ("B", [0.6, 0.7]), ("C", [0.2, 0.3])] {
            for (i, v) in vals.iter().enumerate() {
                let case = format!("c{}", i + 1);
                b.record(algo, &case, &MetricId::dsc(), Some(*v)).unwrap();
                b.record(algo, &case, &MetricId::new("DSC2"), Some(*v))
                    .unwrap();
            }
        }
        let t = b.build().unwrap();
        for family in [AggregationFamily::MetricBased, AggregationFamily::CaseBased] {
            let single = RankingScheme::default_for(MetricId::dsc()).with_family(family);
            let multi = single.clone().with_target(RankingTarget::MultiMetric(vec![
                MetricId::dsc(),
                MetricId::new("DSC2"),
            ]));
            let rs = rank(&t, &single).unwrap();
            let rm = rank(&t, &multi).unwrap();
            assert!(rs.same_assignment(&rm));
        }
    }

    #[test]
    fn single_metric_composite_equals_case_based() {
        let t = dsc_table(&[("A1", &[0.7, 0.7, 0.7]), ("A2", &[0.9, 0.9, 0.1])]);
        let case_based =
            RankingScheme::default_for(MetricId::dsc()).with_family(AggregationFamily::CaseBased);
        let composite = case_based
            .clone()
            .with_target(RankingTarget::MultiMetric(vec![MetricId::dsc()]));
        let a = rank(&t, &case_based).unwrap();
        let b = rank(&t, &composite).unwrap();
        assert!(a.same_assignment(&b));
    }

    fn table_with_missing() -> ResultTable {
        let mut b = ResultTable::builder();
        let rows: [(&str, [Option<f64>; 3]); 3] = [
            ("A", [Some(0.8), Some(0.8), Some(0.8)]),
            ("B", [Some(0.9), None, Some(0.7)]),
            ("C", [Some(0.3), Some(0.4), None]),
        ];
        for (algo, vals) in rows {
            for (i, v) in vals.iter().enumerate() {
                b.record(algo, &format!("c{}", i + 1), &MetricId::dsc(), *v)
                    .unwrap();
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn ignore_policy_drops_missing() {
        let t = table_with_missing();
        let r = rank(&t, &RankingScheme::default_for(MetricId::dsc())).unwrap();
        // B aggregates over c1 and c3 only
        let b = r.entries.iter().find(|e| e.algorithm == "B").unwrap();
        assert!((b.score - 0.8).abs() < 1e-15);
        assert!(r.excluded.is_empty());
    }

    #[test]
    fn worst_value_policy_substitutes() {
        let t = table_with_missing();
        let scheme = RankingScheme::default_for(MetricId::dsc())
            .with_missing_policy(MissingPolicy::WorstValue);
        let r = rank(&t, &scheme).unwrap();
        let b = r.entries.iter().find(|e| e.algorithm == "B").unwrap();
        assert!((b.score - (0.9 + 0.0 + 0.7) / 3.0).abs() < 1e-15);
    }

    #[test]
    fn worst_value_policy_requires_registered_worst() {
        let mut b = ResultTable::builder();
        for algo in ["A", "B"] {
            b.record(algo, "c1", &MetricId::hd(), Some(1.0)).unwrap();
        }
        let t = b.build().unwrap();
        let scheme = RankingScheme::default_for(MetricId::hd())
            .with_missing_policy(MissingPolicy::WorstValue);
        assert!(matches!(rank(&t, &scheme), Err(Error::InvalidScheme(_))));
    }

    #[test]
    fn reject_policy_excludes_and_records() {
        let t = table_with_missing();
        let scheme =
            RankingScheme::default_for(MetricId::dsc()).with_missing_policy(MissingPolicy::Reject);
        let r = rank(&t, &scheme).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].algorithm, "A");
        assert_eq!(r.excluded.len(), 2);
    }

    #[test]
    fn last_rank_policy_assigns_worst_case_rank() {
        let t = table_with_missing();
        let scheme = RankingScheme::default_for(MetricId::dsc())
            .with_family(AggregationFamily::CaseBased)
            .with_missing_policy(MissingPolicy::LastRank);
        let r = rank(&t, &scheme).unwrap();
        // c2: present B missing -> B gets rank 3 (universe size); A(0.8) 1, C(0.4) 2
        // ranks: A (2,1,1)->4/3  B (1,3,2)->2  C (3,2,3)->8/3
        let a = r.entries.iter().find(|e| e.algorithm == "A").unwrap();
        let b = r.entries.iter().find(|e| e.algorithm == "B").unwrap();
        let c = r.entries.iter().find(|e| e.algorithm == "C").unwrap();
        assert!((a.score - 4.0 / 3.0).abs() < 1e-12);
        assert!((b.score - 2.0).abs() < 1e-12);
        assert!((c.score - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn last_rank_invalid_for_metric_based() {
        let t = table_with_missing();
        let scheme = RankingScheme::default_for(MetricId::dsc())
            .with_missing_policy(MissingPolicy::LastRank);
        assert!(matches!(rank(&t, &scheme), Err(Error::InvalidScheme(_))));
    }

    #[test]
    fn all_missing_algorithm_excluded_under_ignore() {
        let mut b = ResultTable::builder();
        b.record("A", "c1", &MetricId::dsc(), Some(0.5)).unwrap();
        b.record("A", "c2", &MetricId::dsc(), Some(0.6)).unwrap();
        b.record("B", "c1", &MetricId::dsc(), None).unwrap();
        b.record("B", "c2", &MetricId::dsc(), None).unwrap();
        let t = b.build().unwrap();
        let r = rank(&t, &RankingScheme::default_for(MetricId::dsc())).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.excluded.len(), 1);
        assert_eq!(r.excluded[0].algorithm, "B");
    }

    #[test]
    fn missing_metric_is_invalid_scheme() {
        let t = dsc_table(&[("A", &[0.5])]);
        let scheme = RankingScheme::default_for(MetricId::new("nope"));
        assert!(matches!(rank(&t, &scheme), Err(Error::InvalidScheme(_))));
    }

    #[test]
    fn entries_sorted_by_rank() {
        let t = dsc_table(&[("low", &[0.1]), ("high", &[0.9]), ("mid", &[0.5])]);
        let r = rank(&t, &RankingScheme::default_for(MetricId::dsc())).unwrap();
        let names: Vec<&str> = r.entries.iter().map(|e| e.algorithm.as_str()).collect();
        assert_eq!(names, ["high", "mid", "low"]);
    }
}
