//! Boxplot oracle equivalence on random lists and schema round-trip checks.

mod common;

use rand::Rng;
use ranklab::report::{boxplot_summary, boxplot_summary_with, sig9, WhiskerRule};
use ranklab::schema::{load_description, ChallengeDescription, ParameterRegistry};

#[test]
fn boxplot_quartiles_match_naive_sort_oracle() {
    let mut rng = common::rng(31);
    for _ in 0..60 {
        let n = rng.random_range(1..=1000usize);
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(-50.0..50.0)).collect();
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);

        let b = boxplot_summary(&values).unwrap();
        assert_eq!(b.median, common::oracle_quantile(&sorted, 0.5));
        assert_eq!(b.q1, common::oracle_quantile(&sorted, 0.25));
        assert_eq!(b.q3, common::oracle_quantile(&sorted, 0.75));
        assert_eq!(b.iqr, b.q3 - b.q1);
        assert!(b.q1 <= b.median && b.median <= b.q3);
        assert_eq!(b.mean, sorted.iter().sum::<f64>() / n as f64);

        // whisker membership: whiskers are observations, outliers lie beyond
        assert!(sorted
            .binary_search_by(|v| v.total_cmp(&b.upper_whisker))
            .is_ok());
        assert!(sorted
            .binary_search_by(|v| v.total_cmp(&b.lower_whisker))
            .is_ok());
        for o in &b.outliers {
            assert!(*o > b.upper_whisker || *o < b.lower_whisker);
        }
        let inside = values
            .iter()
            .filter(|v| **v >= b.lower_whisker && **v <= b.upper_whisker)
            .count();
        assert_eq!(inside + b.outliers.len(), n);

        // quartile-anchored whiskers never sit below the median-anchored ones
        let q = boxplot_summary_with(&values, WhiskerRule::QuartileAnchored).unwrap();
        assert!(q.upper_whisker >= b.upper_whisker);
        assert!(q.lower_whisker <= b.lower_whisker);
    }
}

#[test]
fn sig9_is_idempotent() {
    let mut rng = common::rng(32);
    for _ in 0..1000 {
        let x: f64 = rng.random_range(-1.0e6..1.0e6);
        let once = sig9(x);
        assert_eq!(once, sig9(once));
        assert!((once - x).abs() <= 1e-8 * x.abs().max(1.0));
    }
}

#[test]
fn random_descriptions_roundtrip() {
    let registry = ParameterRegistry::builtin();
    let mut rng = common::rng(33);
    for round in 0..25 {
        let mut desc = ChallengeDescription::empty();
        if round % 2 == 0 {
            desc.metadata.id = Some(format!("doc-{round}"));
        }
        for p in &registry.parameters {
            match rng.random_range(0..4u8) {
                0 => {}
                1 => {
                    desc.set(&p.key, serde_json::json!(format!("text {round}")), None)
                        .unwrap();
                }
                2 => {
                    desc.set(&p.key, serde_json::json!(rng.random_range(0..100)), None)
                        .unwrap();
                }
                _ => {
                    desc.set(
                        &p.key,
                        serde_json::json!({"list": [1, 2, 3]}),
                        Some("note".into()),
                    )
                    .unwrap();
                }
            }
        }
        let text = desc.to_json_string_pretty();
        let back = load_description(&text).unwrap();
        assert_eq!(desc, back);
    }
}
