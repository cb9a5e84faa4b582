//! Brute-force oracles and generators shared by the integration and
//! acceptance suites. Everything here is written independently of the
//! library's implementation paths: set-based overlap counting, exhaustive
//! pairwise distance scans, naive pair counting for tau, and full sign
//! enumeration for the signed rank test.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ranklab::LabelMask;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random mask with dims up to `max_dim` per axis; roughly `fill` of the
/// voxels are foreground.
pub fn random_mask(
    rng: &mut ChaCha8Rng,
    dims: [usize; 3],
    spacing: [f64; 3],
    fill: f64,
) -> LabelMask {
    let mut mask = LabelMask::new(dims, spacing).unwrap();
    for z in 0..dims[2] {
        for y in 0..dims[1] {
            for x in 0..dims[0] {
                if rng.random::<f64>() < fill {
                    mask.set([x, y, z], true).unwrap();
                }
            }
        }
    }
    mask
}

pub fn foreground_set(m: &LabelMask) -> HashSet<[usize; 3]> {
    m.foreground().into_iter().collect()
}

/// DSC by set arithmetic; (value, both_empty).
pub fn oracle_dsc(a: &LabelMask, b: &LabelMask) -> (f64, bool) {
    let sa = foreground_set(a);
    let sb = foreground_set(b);
    if sa.is_empty() && sb.is_empty() {
        return (1.0, true);
    }
    let inter = sa.intersection(&sb).count();
    (2.0 * inter as f64 / (sa.len() + sb.len()) as f64, false)
}

/// Boundary voxels by direct 6-neighborhood enumeration over the set.
pub fn oracle_boundary(m: &LabelMask) -> Vec<[usize; 3]> {
    let fg = foreground_set(m);
    let mut out: Vec<[usize; 3]> = fg
        .iter()
        .filter(|&&[x, y, z]| {
            let neighbors: [[i64; 3]; 6] = [
                [x as i64 - 1, y as i64, z as i64],
                [x as i64 + 1, y as i64, z as i64],
                [x as i64, y as i64 - 1, z as i64],
                [x as i64, y as i64 + 1, z as i64],
                [x as i64, y as i64, z as i64 - 1],
                [x as i64, y as i64, z as i64 + 1],
            ];
            neighbors.iter().any(|&[nx, ny, nz]| {
                nx < 0 || ny < 0 || nz < 0 || !fg.contains(&[nx as usize, ny as usize, nz as usize])
            })
        })
        .copied()
        .collect();
    out.sort();
    out
}

fn point_distance(s: [usize; 3], d: [usize; 3], spacing: [f64; 3]) -> f64 {
    let dx = (s[0] as f64 - d[0] as f64) * spacing[0];
    let dy = (s[1] as f64 - d[1] as f64) * spacing[1];
    let dz = (s[2] as f64 - d[2] as f64) * spacing[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Directed distances by exhaustive pairwise scan, taking the minimum of
/// per-pair distances (sqrt before min, unlike the library kernel).
pub fn oracle_directed(src: &[[usize; 3]], dst: &[[usize; 3]], spacing: [f64; 3]) -> Vec<f64> {
    src.iter()
        .map(|&s| {
            dst.iter()
                .map(|&d| point_distance(s, d, spacing))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// The project-wide quantile rule, restated independently.
pub fn oracle_quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Hausdorff distance on boundary sets by exhaustive scan; `None` when an
/// operand is empty.
pub fn oracle_hausdorff(a: &LabelMask, b: &LabelMask) -> Option<f64> {
    let ba = oracle_boundary(a);
    let bb = oracle_boundary(b);
    if ba.is_empty() || bb.is_empty() {
        return None;
    }
    let ab = oracle_directed(&ba, &bb, a.spacing());
    let ba_d = oracle_directed(&bb, &ba, a.spacing());
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Some(max(&ab).max(max(&ba_d)))
}

pub fn oracle_hd95(a: &LabelMask, b: &LabelMask) -> Option<f64> {
    let ba = oracle_boundary(a);
    let bb = oracle_boundary(b);
    if ba.is_empty() || bb.is_empty() {
        return None;
    }
    let mut ab = oracle_directed(&ba, &bb, a.spacing());
    let mut ba_d = oracle_directed(&bb, &ba, a.spacing());
    ab.sort_by(f64::total_cmp);
    ba_d.sort_by(f64::total_cmp);
    Some(oracle_quantile(&ab, 0.95).max(oracle_quantile(&ba_d, 0.95)))
}

/// All rank vectors of length `n` arising from ranking with ties
/// (min-competition form): one per weak order of `n` items.
pub fn weak_order_rank_vectors(n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    enumerate_assignments(n, 0, &mut assignment, &mut out);
    out
}

fn enumerate_assignments(n: usize, pos: usize, assignment: &mut [usize], out: &mut Vec<Vec<f64>>) {
    if pos == n {
        // keep surjections onto {0..max}: every block up to the max is used
        let max = *assignment.iter().max().unwrap();
        let mut used = vec![false; max + 1];
        for &a in assignment.iter() {
            used[a] = true;
        }
        if used.iter().all(|&u| u) {
            let ranks: Vec<f64> = assignment
                .iter()
                .map(|&a| 1.0 + assignment.iter().filter(|&&b| b < a).count() as f64)
                .collect();
            out.push(ranks);
        }
        return;
    }
    for block in 0..n {
        assignment[pos] = block;
        enumerate_assignments(n, pos + 1, assignment, out);
    }
}

/// tau-b by naive pair classification:
/// `(C - D) / sqrt((C + D + Tx)(C + D + Ty))` with `Tx`/`Ty` the pairs tied
/// only in x / only in y. `None` when a vector is constant.
pub fn oracle_tau_b(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    let mut c = 0i64;
    let mut d = 0i64;
    let mut tx = 0i64;
    let mut ty = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let sx = (x[i] - x[j]).partial_cmp(&0.0).unwrap();
            let sy = (y[i] - y[j]).partial_cmp(&0.0).unwrap();
            use std::cmp::Ordering::*;
            match (sx, sy) {
                (Equal, Equal) => {}
                (Equal, _) => tx += 1,
                (_, Equal) => ty += 1,
                (a, b) if a == b => c += 1,
                _ => d += 1,
            }
        }
    }
    let denom = ((c + d + tx) as f64) * ((c + d + ty) as f64);
    if denom == 0.0 {
        return None;
    }
    Some((c - d) as f64 / denom.sqrt())
}

/// Exact two-sided signed rank p-value by full enumeration of the `2^n`
/// sign assignments, counting assignments at least as extreme as observed.
/// Returns (W+, p). Zero differences are dropped first; all-zero input
/// yields (0, 1).
pub fn oracle_wilcoxon(pairs: &[(f64, f64)]) -> (f64, f64) {
    let diffs: Vec<f64> = pairs
        .iter()
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    let n = diffs.len();
    if n == 0 {
        return (0.0, 1.0);
    }
    // fractional ranks of |d| by direct counting
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks: Vec<f64> = abs
        .iter()
        .map(|&a| {
            let less = abs.iter().filter(|&&b| b < a).count() as f64;
            let equal = abs.iter().filter(|&&b| b == a).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect();
    let w_obs: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();
    let total: f64 = ranks.iter().sum();
    let mu = total / 2.0;
    let observed_dev = (w_obs - mu).abs();
    let mut extreme = 0u64;
    for mask in 0u64..(1u64 << n) {
        let w: f64 = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ranks[i])
            .sum();
        if (w - mu).abs() >= observed_dev {
            extreme += 1;
        }
    }
    (w_obs, extreme as f64 / (1u64 << n) as f64)
}
