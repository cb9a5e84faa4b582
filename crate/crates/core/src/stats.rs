//! Nonparametric statistics kernels: quantiles, Kendall's tau-b and the
//! Wilcoxon signed rank test.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Quantile of an ascending-sorted slice.
///
/// Rule fixed project-wide: position `h = (n - 1) * q`, linear interpolation
/// between the entries at `floor(h)` and `ceil(h)`. For `q = 0.5` this is the
/// usual median (mean of the two middle elements at even length).
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    assert!((0.0..=1.0).contains(&q), "quantile level outside [0,1]");
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Kendall's tau-b rank correlation between two equally long vectors.
///
/// Tie-corrected: `tau_b = (C - D) / sqrt((n0 - n1)(n0 - n2))` with `n0` the
/// number of pairs and `n1`, `n2` the tied pair counts per vector. Equals the
/// classical tau when no ties are present. Discordant pairs are counted by
/// merge-sort inversion counting, so large vectors stay cheap.
pub fn tau_b(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "tau-b needs equally long vectors, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "tau-b needs at least two entries".into(),
        ));
    }
    if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("tau-b inputs must be finite".into()));
    }

    let mut pairs: Vec<(f64, f64)> = x.iter().copied().zip(y.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let tie_pairs = |run: u64| run * (run - 1) / 2;

    // tied pairs in x, and pairs tied in both, from runs in the sorted order
    let mut n1 = 0u64;
    let mut n_xy = 0u64;
    let mut run_x = 1u64;
    let mut run_xy = 1u64;
    for i in 1..n {
        if pairs[i].0 == pairs[i - 1].0 {
            run_x += 1;
            if pairs[i].1 == pairs[i - 1].1 {
                run_xy += 1;
            } else {
                n_xy += tie_pairs(run_xy);
                run_xy = 1;
            }
        } else {
            n1 += tie_pairs(run_x);
            n_xy += tie_pairs(run_xy);
            run_x = 1;
            run_xy = 1;
        }
    }
    n1 += tie_pairs(run_x);
    n_xy += tie_pairs(run_xy);

    // discordant pairs = inversions in y once sorted by (x, y)
    let mut ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buf = vec![0.0; n];
    let discordant = count_inversions(&mut ys, &mut buf);

    // tied pairs in y, from the now fully sorted ys
    let mut n2 = 0u64;
    let mut run_y = 1u64;
    for i in 1..n {
        if ys[i] == ys[i - 1] {
            run_y += 1;
        } else {
            n2 += tie_pairs(run_y);
            run_y = 1;
        }
    }
    n2 += tie_pairs(run_y);

    let n0 = n as u64 * (n as u64 - 1) / 2;
    let denom = (n0 - n1) as f64 * (n0 - n2) as f64;
    if denom == 0.0 {
        return Err(Error::TauUndefined(
            "zero rank variance (all entries tied) in at least one vector".into(),
        ));
    }
    // every pair is concordant, discordant, or tied somewhere:
    // C + D = n0 - n1 - n2 + n_xy (n1 + n2 may exceed n0; ties in both count twice)
    let c_plus_d = n0 as i64 - n1 as i64 - n2 as i64 + n_xy as i64;
    let c_minus_d = c_plus_d as f64 - 2.0 * discordant as f64;
    Ok((c_minus_d / denom.sqrt()).clamp(-1.0, 1.0))
}

/// Counts inversions (strictly descending pairs) while merge-sorting `v`.
fn count_inversions(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = v.split_at_mut(mid);
    let mut inv = count_inversions(left, buf) + count_inversions(right, buf);
    let mut i = 0;
    let mut j = 0;
    let mut k = 0;
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf[k] = left[i];
            i += 1;
        } else {
            buf[k] = right[j];
            j += 1;
            inv += (left.len() - i) as u64;
        }
        k += 1;
    }
    while i < left.len() {
        buf[k] = left[i];
        i += 1;
        k += 1;
    }
    while j < right.len() {
        buf[k] = right[j];
        j += 1;
        k += 1;
    }
    v.copy_from_slice(&buf[..n]);
    inv
}

/// Fractional ranks (1-based, ties get the mean of their positions).
pub(crate) fn fractional_ranks_abs(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + 1 + j + 1) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Pairs with `n` at or below this bound take the exact enumeration path;
/// larger samples use the normal approximation with tie and continuity
/// corrections.
pub const WILCOXON_EXACT_LIMIT: usize = 25;

/// How the p-value of a signed rank test was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WilcoxonMethod {
    ExactEnumeration,
    NormalApproximation,
}

/// Result of a two-sided Wilcoxon signed rank test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonOutcome {
    /// Sum of the ranks of the positive differences (W+).
    pub statistic: f64,
    pub p_value: f64,
    /// Pairs remaining after zero differences are dropped.
    pub n_used: usize,
    pub zeros_dropped: usize,
    pub method: WilcoxonMethod,
    /// True when every difference was zero; then `p_value` is 1 by convention.
    pub degenerate: bool,
}

/// Two-sided Wilcoxon signed rank test on paired observations.
///
/// Zero differences are dropped (Wilcoxon's original procedure). Absolute
/// differences are ranked with fractional ties. For `n <= 25` the p-value is
/// exact over all `2^n` sign assignments; beyond that a normal approximation
/// with tie correction and continuity correction is used.
pub fn wilcoxon_signed_rank(pairs: &[(f64, f64)]) -> Result<WilcoxonOutcome> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput(
            "signed rank test needs at least one pair".into(),
        ));
    }
    if pairs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(Error::InvalidInput(
            "signed rank test inputs must be finite".into(),
        ));
    }
    let diffs: Vec<f64> = pairs
        .iter()
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    let zeros_dropped = pairs.len() - diffs.len();
    if diffs.is_empty() {
        return Ok(WilcoxonOutcome {
            statistic: 0.0,
            p_value: 1.0,
            n_used: 0,
            zeros_dropped,
            method: WilcoxonMethod::ExactEnumeration,
            degenerate: true,
        });
    }

    let n = diffs.len();
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = fractional_ranks_abs(&abs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();

    if n <= WILCOXON_EXACT_LIMIT {
        // Doubled ranks are integers even under fractional ties.
        let doubled: Vec<u64> = ranks.iter().map(|r| (2.0 * r).round() as u64).collect();
        let total: u64 = doubled.iter().sum();
        let mut counts = vec![0u64; total as usize + 1];
        counts[0] = 1;
        for &r in &doubled {
            for t in (r as usize..counts.len()).rev() {
                counts[t] += counts[t - r as usize];
            }
        }
        let w2 = (2.0 * w_plus).round() as u64;
        let lower: u64 = counts[..=w2 as usize].iter().sum();
        let upper: u64 = counts[w2 as usize..].iter().sum();
        let assignments = (1u64 << n) as f64;
        let p = (2.0 * lower.min(upper) as f64 / assignments).min(1.0);
        Ok(WilcoxonOutcome {
            statistic: w_plus,
            p_value: p,
            n_used: n,
            zeros_dropped,
            method: WilcoxonMethod::ExactEnumeration,
            degenerate: false,
        })
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        // tie correction: sum of (t^3 - t) over tied groups of |d|
        let mut sorted_abs = abs.clone();
        sorted_abs.sort_by(f64::total_cmp);
        let mut tie_term = 0.0;
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j + 1 < n && sorted_abs[j + 1] == sorted_abs[i] {
                j += 1;
            }
            let t = (j - i + 1) as f64;
            tie_term += t * t * t - t;
            i = j + 1;
        }
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
        let d = w_plus - mean;
        let z = (d - 0.5 * d.signum()) / var.sqrt();
        let normal = Normal::new(0.0, 1.0).expect("unit normal");
        let p = (2.0 * (1.0 - normal.cdf(z.abs()))).min(1.0);
        Ok(WilcoxonOutcome {
            statistic: w_plus,
            p_value: p,
            n_used: n,
            zeros_dropped,
            method: WilcoxonMethod::NormalApproximation,
            degenerate: false,
        })
    }
}
