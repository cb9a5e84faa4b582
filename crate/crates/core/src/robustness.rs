//! Ranking stability and manipulability analyses: rank correlation between
//! rankings, bootstrap and leave-one-out winner stability, scheme-vs-scheme
//! statistical comparison, observer sensitivity, and the missing-data
//! exploit audit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::map_indexed;
use crate::ranking::{
    rank, rank_on_cases, AggregationFamily, MissingPolicy, Ranking, RankingScheme, RankingTarget,
};
use crate::stats::{tau_b, wilcoxon_signed_rank, WilcoxonOutcome};
use crate::table::{Orientation, ResultTable};

/// Bootstrap resampling configuration.
///
/// Every resample draws its case indices from a generator seeded by
/// `(seed, resample index)` alone, so reports are identical across thread
/// counts and with parallelism disabled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    /// Number of bootstrap samples (B).
    pub samples: usize,
    pub seed: u64,
    /// An originally non-winning algorithm counts as a potential usurper
    /// when it reaches rank 1 in at least this fraction of the resamples.
    pub usurper_min_fraction: f64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            usurper_min_fraction: 0.01,
        }
    }
}

impl BootstrapConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            ..Self::default()
        }
    }
}

/// Which resampling produced a [`StabilityReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResamplingMethod {
    Bootstrap { samples: usize, seed: u64 },
    LeaveOneOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankOneFrequency {
    pub algorithm: String,
    /// Fraction of resamples in which the algorithm held rank 1.
    pub frequency: f64,
}

/// Winner-stability summary of a resampling analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub method: ResamplingMethod,
    pub scheme: RankingScheme,
    pub original: Ranking,
    pub original_winners: Vec<String>,
    /// Set when the original ranking has no single winner; such reports are
    /// omitted from cross-task aggregates.
    pub excluded: bool,
    pub exclusion_reason: Option<String>,
    pub resamples: usize,
    /// Fraction of resamples in which the original winner keeps rank 1.
    /// `None` when excluded.
    pub winner_stability: Option<f64>,
    /// Proportion of originally non-winning algorithms that reached rank 1
    /// in at least `usurper_min_occurrences` resamples. `None` when excluded.
    pub usurper_fraction: Option<f64>,
    pub usurper_min_occurrences: usize,
    pub rank_one_frequency: Vec<RankOneFrequency>,
    /// Kendall's tau-b of each resample ranking against the original,
    /// computed over the algorithms present in both; `None` where undefined.
    pub taus: Vec<Option<f64>>,
}

/// Task-level inclusion criteria for the robustness analyses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "criterion", rename_all = "kebab-case")]
pub enum InclusionViolation {
    TooFewAlgorithms { found: usize },
    TooFewCases { found: usize },
}

impl std::fmt::Display for InclusionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InclusionViolation::TooFewAlgorithms { found } => {
                write!(f, "number of algorithms >= 3 (found {found})")
            }
            InclusionViolation::TooFewCases { found } => {
                write!(f, "number of test cases > 1 (found {found})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eligibility {
    pub eligible: bool,
    pub violations: Vec<InclusionViolation>,
}

/// Checks the task inclusion criteria: at least 3 algorithms and more than
/// one test case. Each violated criterion is named in the result.
pub fn inclusion_check(table: &ResultTable) -> Eligibility {
    let mut violations = Vec::new();
    if table.n_algorithms() < 3 {
        violations.push(InclusionViolation::TooFewAlgorithms {
            found: table.n_algorithms(),
        });
    }
    if table.n_cases() <= 1 {
        violations.push(InclusionViolation::TooFewCases {
            found: table.n_cases(),
        });
    }
    Eligibility {
        eligible: violations.is_empty(),
        violations,
    }
}

/// Kendall's tau-b between two rankings over the identical algorithm set.
pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Result<f64> {
    let mut set_a: Vec<&str> = a.entries.iter().map(|e| e.algorithm.as_str()).collect();
    let mut set_b: Vec<&str> = b.entries.iter().map(|e| e.algorithm.as_str()).collect();
    set_a.sort_unstable();
    set_b.sort_unstable();
    if set_a != set_b {
        return Err(Error::InvalidInput(
            "rankings must cover the identical algorithm set".into(),
        ));
    }
    let xs: Vec<f64> = a.entries.iter().map(|e| e.rank).collect();
    let ys: Vec<f64> = a
        .entries
        .iter()
        .map(|e| b.rank_of(&e.algorithm).expect("set checked"))
        .collect();
    tau_b(&xs, &ys)
}

/// tau-b over the algorithms present in both rankings; `None` if fewer than
/// two are shared or the correlation is undefined (all ranks tied).
fn tau_on_common(a: &Ranking, b: &Ranking) -> Option<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for e in &a.entries {
        if let Some(r) = b.rank_of(&e.algorithm) {
            xs.push(e.rank);
            ys.push(r);
        }
    }
    if xs.len() < 2 {
        return None;
    }
    tau_b(&xs, &ys).ok()
}

struct ResampleOutcome {
    winners: Vec<String>,
    tau: Option<f64>,
}

fn summarize(
    method: ResamplingMethod,
    scheme: &RankingScheme,
    table: &ResultTable,
    original: Ranking,
    outcomes: Vec<ResampleOutcome>,
    usurper_min_occurrences: usize,
) -> StabilityReport {
    let resamples = outcomes.len();
    let original_winners = original.winners();
    let (excluded, exclusion_reason) = match original_winners.len() {
        1 => (false, None),
        0 => (
            true,
            Some("no algorithm ranked in the original ranking".to_string()),
        ),
        n => (
            true,
            Some(format!("{n} winners tie in the original ranking")),
        ),
    };

    let mut rank1_counts: Vec<usize> = vec![0; table.n_algorithms()];
    for outcome in &outcomes {
        for w in &outcome.winners {
            if let Some(i) = table.algorithm_pos(w) {
                rank1_counts[i] += 1;
            }
        }
    }
    let rank_one_frequency: Vec<RankOneFrequency> = table
        .algorithms()
        .iter()
        .enumerate()
        .map(|(i, a)| RankOneFrequency {
            algorithm: a.clone(),
            frequency: rank1_counts[i] as f64 / resamples as f64,
        })
        .collect();

    let (winner_stability, usurper_fraction) = if excluded {
        (None, None)
    } else {
        let winner = &original_winners[0];
        let held = outcomes
            .iter()
            .filter(|o| o.winners.iter().any(|w| w == winner))
            .count();
        let non_winners: Vec<&str> = original
            .entries
            .iter()
            .map(|e| e.algorithm.as_str())
            .filter(|a| a != winner)
            .collect();
        let usurpers = non_winners
            .iter()
            .filter(|a| {
                table
                    .algorithm_pos(a)
                    .map(|i| rank1_counts[i] >= usurper_min_occurrences)
                    .unwrap_or(false)
            })
            .count();
        let fraction = if non_winners.is_empty() {
            0.0
        } else {
            usurpers as f64 / non_winners.len() as f64
        };
        (Some(held as f64 / resamples as f64), Some(fraction))
    };

    StabilityReport {
        method,
        scheme: scheme.clone(),
        original,
        original_winners,
        excluded,
        exclusion_reason,
        resamples,
        winner_stability,
        usurper_fraction,
        usurper_min_occurrences,
        rank_one_frequency,
        taus: outcomes.into_iter().map(|o| o.tau).collect(),
    }
}

/// Bootstrap winner-stability analysis.
///
/// Each of the `cfg.samples` resamples draws `n_cases` case identifiers with
/// replacement (a case's values enter once per draw), recomputes the ranking,
/// and compares it against the original. The task must pass
/// [`inclusion_check`]; a task whose original ranking has multiple winners is
/// reported with the `excluded` flag instead of stability fractions.
pub fn bootstrap_stability(
    table: &ResultTable,
    scheme: &RankingScheme,
    cfg: &BootstrapConfig,
) -> Result<StabilityReport> {
    let eligibility = inclusion_check(table);
    if !eligibility.eligible {
        let names: Vec<String> = eligibility
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect();
        return Err(Error::NotEligible(names.join("; ")));
    }
    if cfg.samples == 0 {
        return Err(Error::InvalidInput(
            "bootstrap needs at least one sample".into(),
        ));
    }
    if !(0.0..=1.0).contains(&cfg.usurper_min_fraction) {
        return Err(Error::InvalidInput(
            "usurper threshold must lie in [0, 1]".into(),
        ));
    }
    let original = rank(table, scheme)?;
    let n = table.n_cases();

    let outcomes: Vec<Result<ResampleOutcome>> = map_indexed(cfg.samples, |b| {
        let cases = draw_resample(cfg.seed, b as u64, n);
        let ranking = rank_on_cases(table, scheme, &cases)?;
        Ok(ResampleOutcome {
            winners: ranking.winners(),
            tau: tau_on_common(&original, &ranking),
        })
    });
    let outcomes: Vec<ResampleOutcome> = outcomes.into_iter().collect::<Result<_>>()?;

    let min_occurrences = ((cfg.usurper_min_fraction * cfg.samples as f64).ceil() as usize).max(1);
    Ok(summarize(
        ResamplingMethod::Bootstrap {
            samples: cfg.samples,
            seed: cfg.seed,
        },
        scheme,
        table,
        original,
        outcomes,
        min_occurrences,
    ))
}

/// The case index multiset of one bootstrap resample. Exposed to tests so
/// the retention property can be checked against the exact draws.
pub fn draw_resample(seed: u64, resample: u64, n_cases: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(resample);
    (0..n_cases).map(|_| rng.random_range(0..n_cases)).collect()
}

/// Leave-one-out stability: one ranking per omitted case, summarized like
/// the bootstrap (usurpers count from a single occurrence).
pub fn leave_one_out_stability(
    table: &ResultTable,
    scheme: &RankingScheme,
) -> Result<StabilityReport> {
    let n = table.n_cases();
    if n < 2 {
        return Err(Error::NotEligible(
            InclusionViolation::TooFewCases { found: n }.to_string(),
        ));
    }
    let original = rank(table, scheme)?;
    let outcomes: Vec<Result<ResampleOutcome>> = map_indexed(n, |omit| {
        let cases: Vec<usize> = (0..n).filter(|&c| c != omit).collect();
        let ranking = rank_on_cases(table, scheme, &cases)?;
        Ok(ResampleOutcome {
            winners: ranking.winners(),
            tau: tau_on_common(&original, &ranking),
        })
    });
    let outcomes: Vec<ResampleOutcome> = outcomes.into_iter().collect::<Result<_>>()?;
    Ok(summarize(
        ResamplingMethod::LeaveOneOut,
        scheme,
        table,
        original,
        outcomes,
        1,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskStability {
    pub task: String,
    pub stability_a: f64,
    pub stability_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskExclusion {
    pub task: String,
    pub reason: String,
}

/// Paired comparison of two ranking schemes' winner stability across tasks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeComparison {
    pub scheme_a: RankingScheme,
    pub scheme_b: RankingScheme,
    pub pairs: Vec<TaskStability>,
    pub excluded_tasks: Vec<TaskExclusion>,
    pub wilcoxon: WilcoxonOutcome,
    /// True iff `wilcoxon.p_value < 0.05`.
    pub significant: bool,
}

/// Evaluates the same bootstrap draws under two ranking schemes on every
/// task and compares the paired winner-stability values with a two-sided
/// Wilcoxon signed rank test. Tasks failing the inclusion criteria or
/// lacking a single original winner under either scheme are recorded as
/// excluded and omitted from the test.
pub fn compare_scheme_stability(
    tasks: &[(String, ResultTable)],
    scheme_a: &RankingScheme,
    scheme_b: &RankingScheme,
    cfg: &BootstrapConfig,
) -> Result<SchemeComparison> {
    let mut pairs = Vec::new();
    let mut excluded_tasks = Vec::new();
    let per_task: Vec<std::result::Result<(f64, f64), String>> = map_indexed(tasks.len(), |i| {
        let (_, table) = &tasks[i];
        let a = match bootstrap_stability(table, scheme_a, cfg) {
            Ok(r) => r,
            Err(e) => return Err(e.to_string()),
        };
        let b = match bootstrap_stability(table, scheme_b, cfg) {
            Ok(r) => r,
            Err(e) => return Err(e.to_string()),
        };
        match (a.winner_stability, b.winner_stability) {
            (Some(sa), Some(sb)) => Ok((sa, sb)),
            _ => {
                let reason = a
                    .exclusion_reason
                    .or(b.exclusion_reason)
                    .unwrap_or_else(|| "excluded".into());
                Err(reason)
            }
        }
    });
    for ((name, _), outcome) in tasks.iter().zip(per_task) {
        match outcome {
            Ok((sa, sb)) => pairs.push(TaskStability {
                task: name.clone(),
                stability_a: sa,
                stability_b: sb,
            }),
            Err(reason) => excluded_tasks.push(TaskExclusion {
                task: name.clone(),
                reason,
            }),
        }
    }
    if pairs.len() < 2 {
        return Err(Error::NotEligible(format!(
            "paired scheme comparison needs at least two eligible tasks, found {}",
            pairs.len()
        )));
    }
    let samples: Vec<(f64, f64)> = pairs
        .iter()
        .map(|p| (p.stability_a, p.stability_b))
        .collect();
    let wilcoxon = wilcoxon_signed_rank(&samples)?;
    let significant = wilcoxon.p_value < 0.05;
    Ok(SchemeComparison {
        scheme_a: scheme_a.clone(),
        scheme_b: scheme_b.clone(),
        pairs,
        excluded_tasks,
        wilcoxon,
        significant,
    })
}

/// Outcome of auditing one algorithm's what-if removal of its poor cases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditFinding {
    pub algorithm: String,
    pub original_rank: f64,
    /// `None` when the audit removed every value of the algorithm.
    pub audited_rank: Option<f64>,
    pub dropped_cases: usize,
    pub reached_rank_1: bool,
    pub fully_degenerate: bool,
}

/// Missing-data exploit audit.
///
/// For each ranked algorithm independently: remove its metric values below
/// `threshold` (other algorithms untouched), recompute the ranking under the
/// same scheme, and record the rank movement. Requires the exploitable
/// configuration: metric-based aggregation over a single higher-is-better
/// metric with the ignore-missing policy. The input table is never mutated.
pub fn missing_data_audit(
    table: &ResultTable,
    scheme: &RankingScheme,
    threshold: f64,
) -> Result<Vec<AuditFinding>> {
    if scheme.family != AggregationFamily::MetricBased
        || scheme.missing_policy != MissingPolicy::Ignore
    {
        return Err(Error::InvalidScheme(
            "missing-data audit requires metric-based aggregation with the ignore policy".into(),
        ));
    }
    let metric = match &scheme.target {
        RankingTarget::SingleMetric(m) => m.clone(),
        RankingTarget::MultiMetric(_) => {
            return Err(Error::InvalidScheme(
                "missing-data audit requires a single-metric scheme".into(),
            ))
        }
    };
    let spec = table
        .spec(&metric)
        .ok_or_else(|| Error::InvalidScheme(format!("metric {metric} not present in table")))?;
    if spec.orientation != Orientation::HigherBetter {
        return Err(Error::InvalidScheme(
            "missing-data audit requires a higher-is-better metric".into(),
        ));
    }
    if !threshold.is_finite() {
        return Err(Error::InvalidInput("threshold must be finite".into()));
    }
    let metric_pos = table
        .metric_specs()
        .iter()
        .position(|s| s.id == metric)
        .expect("metric present");

    let original = rank(table, scheme)?;
    let findings: Vec<Result<AuditFinding>> = map_indexed(original.entries.len(), |i| {
        let entry = &original.entries[i];
        let a = table
            .algorithm_pos(&entry.algorithm)
            .expect("ranked algorithm exists in table");
        let (audited_table, dropped) =
            table.with_algorithm_values_dropped(a, |_, m, v| m == metric_pos && v < threshold);
        let (audited_rank, reached) = if dropped == 0 {
            (Some(entry.rank), entry.rank == 1.0)
        } else {
            let audited = rank(&audited_table, scheme)?;
            let r = audited.rank_of(&entry.algorithm);
            let reached = audited.winners().iter().any(|w| w == &entry.algorithm);
            (r, reached)
        };
        Ok(AuditFinding {
            algorithm: entry.algorithm.clone(),
            original_rank: entry.rank,
            fully_degenerate: audited_rank.is_none(),
            audited_rank,
            dropped_cases: dropped,
            reached_rank_1: reached,
        })
    });
    findings.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObserverPair {
    pub observer_a: String,
    pub observer_b: String,
    pub tau: f64,
    pub rankings_differ: bool,
}

/// Per-observer rankings plus the pairwise tau matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObserverComparison {
    pub observers: Vec<String>,
    pub rankings: Vec<Ranking>,
    /// Symmetric with unit diagonal, indexed like `observers`.
    pub tau_matrix: Vec<Vec<f64>>,
    pub pairs: Vec<ObserverPair>,
}

/// Ranks the same algorithms against each observer's reference table and
/// quantifies pairwise agreement with Kendall's tau.
pub fn observer_ranking_comparison(
    observers: &[(String, ResultTable)],
    scheme: &RankingScheme,
) -> Result<ObserverComparison> {
    if observers.len() < 2 {
        return Err(Error::InvalidInput(
            "observer comparison needs at least two observers".into(),
        ));
    }
    let sorted = |v: &[String]| {
        let mut v: Vec<String> = v.to_vec();
        v.sort();
        v
    };
    let algos = sorted(observers[0].1.algorithms());
    let cases = sorted(observers[0].1.cases());
    for (name, table) in &observers[1..] {
        if sorted(table.algorithms()) != algos {
            return Err(Error::InvalidInput(format!(
                "observer {name} covers a different algorithm set"
            )));
        }
        if sorted(table.cases()) != cases {
            return Err(Error::InvalidInput(format!(
                "observer {name} covers a different case set"
            )));
        }
    }

    let rankings: Vec<Ranking> = observers
        .iter()
        .map(|(_, t)| rank(t, scheme))
        .collect::<Result<_>>()?;

    let n = observers.len();
    let mut tau_matrix = vec![vec![1.0; n]; n];
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let tau = kendall_tau(&rankings[i], &rankings[j])?;
            tau_matrix[i][j] = tau;
            tau_matrix[j][i] = tau;
            pairs.push(ObserverPair {
                observer_a: observers[i].0.clone(),
                observer_b: observers[j].0.clone(),
                tau,
                rankings_differ: !rankings[i].same_assignment(&rankings[j]),
            });
        }
    }
    Ok(ObserverComparison {
        observers: observers.iter().map(|(n, _)| n.clone()).collect(),
        rankings,
        tau_matrix,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::MetricId;
    use crate::ranking::AggregationOperator;
    use crate::table::ResultTable;

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

    fn default_scheme() -> RankingScheme {
        RankingScheme::default_for(MetricId::dsc())
    }

    #[test]
    fn inclusion_examples() {
        let ok = dsc_table(&[("A", &[0.1, 0.2]), ("B", &[0.3, 0.4]), ("C", &[0.5, 0.6])]);
        assert!(inclusion_check(&ok).eligible);

        let few_algos = dsc_table(&[("A", &[0.1; 10][..]), ("B", &[0.2; 10][..])]);
        let e = inclusion_check(&few_algos);
        assert!(!e.eligible);
        assert_eq!(
            e.violations,
            vec![InclusionViolation::TooFewAlgorithms { found: 2 }]
        );
        assert!(e.violations[0].to_string().contains("algorithms"));

        let one_case = dsc_table(&[
            ("A", &[0.1]),
            ("B", &[0.2]),
            ("C", &[0.3]),
            ("D", &[0.4]),
            ("E", &[0.5]),
        ]);
        let e = inclusion_check(&one_case);
        assert!(!e.eligible);
        assert_eq!(
            e.violations,
            vec![InclusionViolation::TooFewCases { found: 1 }]
        );
        assert!(e.violations[0].to_string().contains("test cases"));
    }

    #[test]
    fn bootstrap_rejects_ineligible_task_naming_criterion() {
        let t = dsc_table(&[("A", &[0.1, 0.2]), ("B", &[0.3, 0.4])]);
        let err = bootstrap_stability(&t, &default_scheme(), &BootstrapConfig::new(10, 1));
        match err {
            Err(Error::NotEligible(msg)) => assert!(msg.contains("algorithms"), "{msg}"),
            other => panic!("expected NotEligible, got {other:?}"),
        }
    }

    #[test]
    fn dominant_winner_is_fully_stable() {
        let t = dsc_table(&[
            ("best", &[0.9, 0.95, 0.92]),
            ("mid", &[0.5, 0.55, 0.52]),
            ("low", &[0.2, 0.25, 0.22]),
        ]);
        let r = bootstrap_stability(&t, &default_scheme(), &BootstrapConfig::new(200, 7)).unwrap();
        assert!(!r.excluded);
        assert_eq!(r.winner_stability, Some(1.0));
        assert_eq!(r.usurper_fraction, Some(0.0));
        assert_eq!(r.original_winners, vec!["best".to_string()]);
        assert!(r.taus.iter().all(|t| *t == Some(1.0)));
    }

    #[test]
    fn tied_winners_mark_report_excluded() {
        let t = dsc_table(&[("A", &[0.8, 0.8]), ("B", &[0.8, 0.8]), ("C", &[0.1, 0.1])]);
        let r = bootstrap_stability(&t, &default_scheme(), &BootstrapConfig::new(50, 3)).unwrap();
        assert!(r.excluded);
        assert!(r.winner_stability.is_none());
        assert!(r.usurper_fraction.is_none());
        assert_eq!(r.original_winners.len(), 2);
    }

    #[test]
    fn bootstrap_is_deterministic_for_a_seed() {
        let t = dsc_table(&[
            ("A", &[0.8, 0.6, 0.9, 0.3]),
            ("B", &[0.7, 0.7, 0.8, 0.5]),
            ("C", &[0.6, 0.8, 0.2, 0.9]),
        ]);
        let cfg = BootstrapConfig::new(100, 42);
        let r1 = bootstrap_stability(&t, &default_scheme(), &cfg).unwrap();
        let r2 = bootstrap_stability(&t, &default_scheme(), &cfg).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn leave_one_out_derived_example() {
        // full means 0.8 vs 0.7833 -> A1 wins; omitting c3 flips to A2
        let t = dsc_table(&[("A1", &[0.8, 0.8, 0.8]), ("A2", &[0.9, 0.9, 0.55])]);
        let r = leave_one_out_stability(&t, &default_scheme()).unwrap();
        assert!(!r.excluded);
        let ws = r.winner_stability.unwrap();
        assert!((ws - 2.0 / 3.0).abs() < 1e-15, "got {ws}");
        // A2 reached rank 1 once, which meets the >= 1 occurrence rule
        assert_eq!(r.usurper_fraction, Some(1.0));
    }

    #[test]
    fn leave_one_out_two_cases_half_stability() {
        let t = dsc_table(&[("A", &[0.8, 0.8]), ("B", &[0.55, 0.9])]);
        let r = leave_one_out_stability(&t, &default_scheme()).unwrap();
        assert_eq!(r.winner_stability, Some(0.5));
    }

    #[test]
    fn leave_one_out_needs_two_cases() {
        let t = dsc_table(&[("A", &[0.8]), ("B", &[0.9])]);
        assert!(matches!(
            leave_one_out_stability(&t, &default_scheme()),
            Err(Error::NotEligible(_))
        ));
    }

    #[test]
    fn audit_promotes_the_exploiting_algorithm() {
        let t = dsc_table(&[("A1", &[0.8, 0.8, 0.8]), ("A2", &[0.9, 0.9, 0.4])]);
        let findings = missing_data_audit(&t, &default_scheme(), 0.5).unwrap();
        let a2 = findings.iter().find(|f| f.algorithm == "A2").unwrap();
        assert_eq!(a2.original_rank, 2.0);
        assert_eq!(a2.audited_rank, Some(1.0));
        assert_eq!(a2.dropped_cases, 1);
        assert!(a2.reached_rank_1);
        let a1 = findings.iter().find(|f| f.algorithm == "A1").unwrap();
        assert_eq!(a1.dropped_cases, 0);
        assert_eq!(a1.audited_rank, Some(1.0));
    }

    #[test]
    fn audit_is_noop_without_poor_cases() {
        let t = dsc_table(&[("A", &[0.8, 0.9]), ("B", &[0.7, 0.6])]);
        let findings = missing_data_audit(&t, &default_scheme(), 0.5).unwrap();
        for f in findings {
            assert_eq!(Some(f.original_rank), f.audited_rank);
            assert_eq!(f.dropped_cases, 0);
        }
    }

    #[test]
    fn audit_marks_fully_degenerate_algorithms() {
        let t = dsc_table(&[("A", &[0.8, 0.9]), ("B", &[0.2, 0.1])]);
        let findings = missing_data_audit(&t, &default_scheme(), 0.5).unwrap();
        let b = findings.iter().find(|f| f.algorithm == "B").unwrap();
        assert!(b.fully_degenerate);
        assert_eq!(b.audited_rank, None);
        assert!(!b.reached_rank_1);
    }

    #[test]
    fn audit_requires_exploitable_scheme() {
        let t = dsc_table(&[("A", &[0.8]), ("B", &[0.9])]);
        let case_based = default_scheme().with_family(AggregationFamily::CaseBased);
        assert!(matches!(
            missing_data_audit(&t, &case_based, 0.5),
            Err(Error::InvalidScheme(_))
        ));
        let worst = default_scheme().with_missing_policy(MissingPolicy::WorstValue);
        assert!(matches!(
            missing_data_audit(&t, &worst, 0.5),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn audit_never_demotes_dominant_winner() {
        let t = dsc_table(&[
            ("win", &[0.9, 0.95, 0.92]),
            ("b", &[0.6, 0.3, 0.7]),
            ("c", &[0.4, 0.45, 0.2]),
        ]);
        let findings = missing_data_audit(&t, &default_scheme(), 0.5).unwrap();
        let w = findings.iter().find(|f| f.algorithm == "win").unwrap();
        assert_eq!(w.audited_rank, Some(1.0));
        // competitors improve themselves but the dominant winner stays on top
        // under every single-algorithm audit by construction of the audit
        for f in &findings {
            if f.algorithm != "win" {
                assert!(!f.reached_rank_1);
            }
        }
    }

    #[test]
    fn observer_comparison_identical_tables() {
        let t = dsc_table(&[("A", &[0.9, 0.8]), ("B", &[0.7, 0.6]), ("C", &[0.5, 0.4])]);
        let obs = vec![("o1".to_string(), t.clone()), ("o2".to_string(), t)];
        let c = observer_ranking_comparison(&obs, &default_scheme()).unwrap();
        assert_eq!(c.tau_matrix[0][1], 1.0);
        assert!(!c.pairs[0].rankings_differ);
    }

    #[test]
    fn observer_comparison_reversed_tables() {
        let a = dsc_table(&[("A", &[0.9, 0.9]), ("B", &[0.6, 0.6]), ("C", &[0.3, 0.3])]);
        let b = dsc_table(&[("A", &[0.3, 0.3]), ("B", &[0.6, 0.6]), ("C", &[0.9, 0.9])]);
        let obs = vec![("o1".to_string(), a), ("o2".to_string(), b)];
        let c = observer_ranking_comparison(&obs, &default_scheme()).unwrap();
        assert_eq!(c.tau_matrix[0][1], -1.0);
        assert!(c.pairs[0].rankings_differ);
    }

    #[test]
    fn observer_comparison_rejects_mismatched_sets() {
        let a = dsc_table(&[("A", &[0.9]), ("B", &[0.6])]);
        let b = dsc_table(&[("A", &[0.9]), ("C", &[0.6])]);
        let obs = vec![("o1".to_string(), a), ("o2".to_string(), b)];
        assert!(observer_ranking_comparison(&obs, &default_scheme()).is_err());
    }

    #[test]
    fn scheme_self_comparison_is_degenerate() {
        let task = |seed: f64| {
            dsc_table(&[
                ("A", &[0.8, 0.7 + seed / 100.0, 0.9][..]),
                ("B", &[0.6, 0.65, 0.7][..]),
                ("C", &[0.3, 0.2, 0.4][..]),
            ])
        };
        let tasks: Vec<(String, ResultTable)> =
            (0..3).map(|i| (format!("t{i}"), task(i as f64))).collect();
        let scheme = default_scheme();
        let cfg = BootstrapConfig::new(50, 11);
        let cmp = compare_scheme_stability(&tasks, &scheme, &scheme, &cfg).unwrap();
        assert!(cmp.wilcoxon.degenerate);
        assert_eq!(cmp.wilcoxon.p_value, 1.0);
        assert!(!cmp.significant);
    }

    #[test]
    fn kendall_tau_on_rankings() {
        let t = dsc_table(&[("A", &[0.9]), ("B", &[0.5]), ("C", &[0.1])]);
        let r = rank(&t, &default_scheme()).unwrap();
        assert_eq!(kendall_tau(&r, &r).unwrap(), 1.0);

        let rev = dsc_table(&[("A", &[0.1]), ("B", &[0.5]), ("C", &[0.9])]);
        let r2 = rank(&rev, &default_scheme()).unwrap();
        assert_eq!(kendall_tau(&r, &r2).unwrap(), -1.0);
    }

    #[test]
    fn kendall_tau_rejects_mismatched_rankings() {
        let t1 = dsc_table(&[("A", &[0.9]), ("B", &[0.5])]);
        let t2 = dsc_table(&[("A", &[0.9]), ("C", &[0.5])]);
        let r1 = rank(&t1, &default_scheme()).unwrap();
        let r2 = rank(&t2, &default_scheme()).unwrap();
        assert!(kendall_tau(&r1, &r2).is_err());
    }

    #[test]
    fn median_scheme_runs_through_bootstrap() {
        let t = dsc_table(&[
            ("A", &[0.8, 0.6, 0.9]),
            ("B", &[0.7, 0.75, 0.72]),
            ("C", &[0.2, 0.3, 0.1]),
        ]);
        let scheme = default_scheme().with_operator(AggregationOperator::Median);
        let r = bootstrap_stability(&t, &scheme, &BootstrapConfig::new(64, 5)).unwrap();
        assert_eq!(r.resamples, 64);
        assert!(r.winner_stability.unwrap() <= 1.0);
    }
}
