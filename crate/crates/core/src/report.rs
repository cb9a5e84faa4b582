//! Report data types: boxplot summaries and the analysis report envelope
//! emitted by the command-line tools.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::stats::quantile_sorted;

/// Whisker anchoring rule for [`boxplot_summary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WhiskerRule {
    /// Whiskers reach the most extreme observations within
    /// `median ± 1.5 * IQR` (the default here).
    #[default]
    MedianAnchored,
    /// Conventional rule: observations within `[q1 - 1.5*IQR, q3 + 1.5*IQR]`.
    QuartileAnchored,
}

/// Five-number summary plus mean and outliers.
///
/// Under the median-anchored rule the whiskers can land inside the quartile
/// box on skewed data, so `lower <= q1` and `q3 <= upper` are intentionally
/// not invariants; `q1 <= median <= q3` always holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotSummary {
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    pub upper_whisker: f64,
    pub lower_whisker: f64,
    pub mean: f64,
    /// Observations beyond the whiskers, ascending.
    pub outliers: Vec<f64>,
    pub whisker_rule: WhiskerRule,
}

/// Boxplot summary with the median-anchored whisker rule.
pub fn boxplot_summary(values: &[f64]) -> Result<BoxplotSummary> {
    boxplot_summary_with(values, WhiskerRule::MedianAnchored)
}

pub fn boxplot_summary_with(values: &[f64], rule: WhiskerRule) -> Result<BoxplotSummary> {
    if values.is_empty() {
        return Err(Error::InvalidInput("boxplot of an empty list".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("boxplot values must be finite".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = quantile_sorted(&sorted, 0.5);
    let q1 = quantile_sorted(&sorted, 0.25);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let (low_anchor, high_anchor) = match rule {
        WhiskerRule::MedianAnchored => (median, median),
        WhiskerRule::QuartileAnchored => (q1, q3),
    };
    let high_bound = high_anchor + 1.5 * iqr;
    let low_bound = low_anchor - 1.5 * iqr;
    // the anchor itself is always within bounds, so both whiskers exist
    let upper_whisker = sorted
        .iter()
        .rev()
        .find(|v| **v <= high_bound)
        .copied()
        .expect("anchor observation within bound");
    let lower_whisker = sorted
        .iter()
        .find(|v| **v >= low_bound)
        .copied()
        .expect("anchor observation within bound");
    let outliers: Vec<f64> = sorted
        .iter()
        .filter(|v| **v > upper_whisker || **v < lower_whisker)
        .copied()
        .collect();
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    Ok(BoxplotSummary {
        median,
        q1,
        q3,
        iqr,
        upper_whisker,
        lower_whisker,
        mean,
        outliers,
        whisker_rule: rule,
    })
}

/// Digest of one input file, so a report pins what it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Envelope for every CLI analysis output.
///
/// A report echoes the full configuration (scheme, seeds, thresholds,
/// defaults included), so the report alone suffices to re-run the analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub config: Value,
    pub results: Value,
}

impl AnalysisReport {
    /// Serializes deterministically: numbers rounded to 9 significant digits
    /// (the same values plot-data CSVs carry), stable key order.
    pub fn to_json_pretty(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        round_numbers(&mut value);
        let mut out = serde_json::to_string_pretty(&value).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Rounds to 9 significant decimal digits; report payloads pass through this
/// so JSON and CSV emissions agree exactly.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// Applies [`sig9`] to every non-integer number in a JSON tree.
pub fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if !n.is_i64() && !n.is_u64() {
                if let Some(f) = n.as_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(sig9(f)) {
                        *n = rounded;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}
