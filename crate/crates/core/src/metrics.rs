//! Segmentation performance metrics between binary masks in physical
//! coordinates: overlap (DSC) and boundary distances (HD, HD95).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::LabelMask;
use crate::parallel::map_indexed;
use crate::stats::quantile_sorted;

/// Identifier of a performance metric, e.g. `DSC`, `HD`, `HD95`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MetricId(pub String);

impl MetricId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn dsc() -> Self {
        Self("DSC".into())
    }

    pub fn hd() -> Self {
        Self("HD".into())
    }

    pub fn hd95() -> Self {
        Self("HD95".into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for MetricId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for MetricId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

/// The outcome of evaluating one metric on one mask pair.
///
/// `value` is `None` when the metric is undefined for the input pair (e.g.
/// a distance metric on an empty mask). `degenerate` marks conventions such
/// as DSC = 1 on two empty masks, so reports can flag them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricValue {
    pub metric: MetricId,
    value: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

impl MetricValue {
    pub fn defined(metric: MetricId, value: f64) -> Self {
        Self {
            metric,
            value: Some(value),
            degenerate: false,
        }
    }

    pub fn undefined(metric: MetricId) -> Self {
        Self {
            metric,
            value: None,
            degenerate: false,
        }
    }

    fn degenerate(metric: MetricId, value: f64) -> Self {
        Self {
            metric,
            value: Some(value),
            degenerate: true,
        }
    }

    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }

    pub fn value(&self) -> Option<f64> {
        self.value
    }
}

/// Which point set distance metrics are evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceSource {
    /// 6-connectivity boundary voxels (the default).
    #[default]
    Boundary,
    /// Every foreground voxel.
    Foreground,
}

/// Configuration for the distance metrics.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct DistanceOptions {
    pub surface: SurfaceSource,
}

fn check_dims(a: &LabelMask, b: &LabelMask) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            left: a.dims(),
            right: b.dims(),
        });
    }
    Ok(())
}

fn check_spacing(a: &LabelMask, b: &LabelMask) -> Result<()> {
    if a.spacing() != b.spacing() {
        return Err(Error::SpacingMismatch {
            left: a.spacing(),
            right: b.spacing(),
        });
    }
    Ok(())
}

/// Dice similarity coefficient `2|A∩B| / (|A| + |B|)`.
///
/// Two empty masks agree perfectly by convention; the result is 1.0 and
/// flagged degenerate.
pub fn dsc(a: &LabelMask, b: &LabelMask) -> Result<MetricValue> {
    check_dims(a, b)?;
    let na = a.foreground_count();
    let nb = b.foreground_count();
    if na == 0 && nb == 0 {
        return Ok(MetricValue::degenerate(MetricId::dsc(), 1.0));
    }
    let inter = a
        .foreground()
        .into_iter()
        .filter(|&v| b.is_foreground(v))
        .count();
    let value = 2.0 * inter as f64 / (na + nb) as f64;
    Ok(MetricValue::defined(MetricId::dsc(), value))
}

/// Foreground voxels with at least one face-adjacent (6-connectivity)
/// neighbor that is background or outside the grid.
pub fn extract_boundary(m: &LabelMask) -> LabelMask {
    let mut out = LabelMask::new(m.dims(), m.spacing()).expect("source mask is valid");
    for [x, y, z] in m.foreground() {
        let mut exposed = false;
        // signed neighbor coordinates; `is_foreground` treats out-of-grid as background
        for (dx, dy, dz) in [
            (-1i64, 0i64, 0i64),
            (1, 0, 0),
            (0, -1, 0),
            (0, 1, 0),
            (0, 0, -1),
            (0, 0, 1),
        ] {
            let nx = x as i64 + dx;
            let ny = y as i64 + dy;
            let nz = z as i64 + dz;
            if nx < 0 || ny < 0 || nz < 0 {
                exposed = true;
                break;
            }
            if !m.is_foreground([nx as usize, ny as usize, nz as usize]) {
                exposed = true;
                break;
            }
        }
        if exposed {
            out.set([x, y, z], true).expect("coordinate is in grid");
        }
    }
    out
}

/// For every source point, the Euclidean distance to the nearest destination
/// point, with voxel coordinates scaled per axis by `spacing`.
///
/// Returns one entry per source point, in source order.
pub fn directed_distances(
    src: &[[usize; 3]],
    dst: &[[usize; 3]],
    spacing: [f64; 3],
) -> Result<Vec<f64>> {
    if src.is_empty() || dst.is_empty() {
        return Err(Error::MetricUndefined(
            "directed distances need nonempty source and destination point sets".into(),
        ));
    }
    Ok(map_indexed(src.len(), |i| {
        let s = src[i];
        let mut best = f64::INFINITY;
        for d in dst {
            let dx = (s[0] as f64 - d[0] as f64) * spacing[0];
            let dy = (s[1] as f64 - d[1] as f64) * spacing[1];
            let dz = (s[2] as f64 - d[2] as f64) * spacing[2];
            let sq = dx * dx + dy * dy + dz * dz;
            if sq < best {
                best = sq;
            }
        }
        best.sqrt()
    }))
}

fn surface_points(m: &LabelMask, opts: &DistanceOptions) -> Vec<[usize; 3]> {
    match opts.surface {
        SurfaceSource::Boundary => extract_boundary(m).foreground(),
        SurfaceSource::Foreground => m.foreground(),
    }
}

fn directed_pair(
    a: &LabelMask,
    b: &LabelMask,
    opts: &DistanceOptions,
) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
    check_dims(a, b)?;
    check_spacing(a, b)?;
    let pa = surface_points(a, opts);
    let pb = surface_points(b, opts);
    if pa.is_empty() || pb.is_empty() {
        return Ok(None);
    }
    let ab = directed_distances(&pa, &pb, a.spacing())?;
    let ba = directed_distances(&pb, &pa, a.spacing())?;
    Ok(Some((ab, ba)))
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// Hausdorff distance: the larger of the two directed maximum distances,
/// evaluated on boundary point sets by default.
///
/// Undefined (not a sentinel number) when either operand is empty.
pub fn hausdorff(a: &LabelMask, b: &LabelMask) -> Result<MetricValue> {
    hausdorff_with(a, b, &DistanceOptions::default())
}

pub fn hausdorff_with(a: &LabelMask, b: &LabelMask, opts: &DistanceOptions) -> Result<MetricValue> {
    Ok(match directed_pair(a, b, opts)? {
        Some((ab, ba)) => MetricValue::defined(MetricId::hd(), max_of(&ab).max(max_of(&ba))),
        None => MetricValue::undefined(MetricId::hd()),
    })
}

/// 95th-percentile variant of the Hausdorff distance: the larger of the two
/// directions' 95th percentiles of directed distances.
///
/// Percentile rule: values sorted ascending, position `h = (n-1) * q`, linear
/// interpolation between the neighboring entries.
pub fn hd95(a: &LabelMask, b: &LabelMask) -> Result<MetricValue> {
    hd95_with(a, b, &DistanceOptions::default())
}

pub fn hd95_with(a: &LabelMask, b: &LabelMask, opts: &DistanceOptions) -> Result<MetricValue> {
    Ok(match directed_pair(a, b, opts)? {
        Some((mut ab, mut ba)) => {
            ab.sort_by(f64::total_cmp);
            ba.sort_by(f64::total_cmp);
            let q = quantile_sorted(&ab, 0.95).max(quantile_sorted(&ba, 0.95));
            MetricValue::defined(MetricId::hd95(), q)
        }
        None => MetricValue::undefined(MetricId::hd95()),
    })
}
