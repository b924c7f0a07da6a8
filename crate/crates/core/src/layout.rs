//! Stage 1: ranking VIF layouts.
//!
//! A layout is scored by `e_l = e_o * (alpha * e_c + (1 - alpha) * uniformity)`
//! where `e_o` gates out layouts touching the pivot box, `e_c` is convex-hull
//! coverage of the canvas and `uniformity` rewards points that sit at similar
//! distances from the pivot center (canvas center without a pivot).
//!
//! Hand-drawn strokes take a different route: the stroke's dominant points
//! estimate VG positions and corpus layouts are ranked by mean point
//! distance, in either drawing direction.

use crate::assets::{AssetStore, VifLayout};
use crate::geometry::{
    convex_hull, dominant_points, polygon_area, resample_to_n, BBox, Canvas, GeometryError, Point,
    Polyline,
};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

/// Side of the square footprint assumed around each VG for padded coverage.
pub const VG_FOOTPRINT: f64 = 0.1;
pub const DEFAULT_ALPHA: f64 = 0.5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LayoutError {
    #[error("no candidate layouts with {0} points")]
    NoCandidates(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyWeights {
    pub alpha: f64,
}

impl Default for EnergyWeights {
    fn default() -> Self {
        EnergyWeights {
            alpha: DEFAULT_ALPHA,
        }
    }
}

impl EnergyWeights {
    pub fn new(alpha: f64) -> Result<Self, LayoutError> {
        if (0.0..=1.0).contains(&alpha) {
            Ok(EnergyWeights { alpha })
        } else {
            Err(LayoutError::InvalidAlpha(alpha))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PivotPlacement {
    pub bbox: BBox,
    /// Id of a pivot graphic in the asset store.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graphic_ref: Option<String>,
    /// Inline SVG for graphics that are not store assets (uploads, files).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
}

impl PivotPlacement {
    pub fn new(bbox: BBox) -> Self {
        PivotPlacement {
            bbox,
            graphic_ref: None,
            svg: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutScore {
    pub layout_id: String,
    pub e_o: u8,
    pub e_c: f64,
    /// Population variance of diagonal-normalized distances to the center.
    pub e_u_raw: f64,
    pub uniformity: f64,
    pub mean_distance: f64,
    pub vg_count: usize,
    pub e_l: f64,
    /// Set when the layout had more points than requested and was cut.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

pub fn pivot_center(p: &BBox) -> Point {
    Point::new(p.x + p.w / 2.0, p.y + p.h / 2.0)
}

pub fn energy_overlap(points: &[Point], pivot: Option<&PivotPlacement>) -> u8 {
    match pivot {
        Some(pv) if points.iter().any(|p| pv.bbox.contains(*p)) => 0,
        _ => 1,
    }
}

/// Hull coverage of the unit canvas. Padded mode expands every point into a
/// [`VG_FOOTPRINT`]-sided square (clipped to the canvas) before taking the
/// hull, so straight layouts still register coverage.
pub fn energy_coverage(points: &[Point], padded: bool) -> f64 {
    let area = if padded {
        let h = VG_FOOTPRINT / 2.0;
        let corners: Vec<Point> = points
            .iter()
            .flat_map(|p| {
                [(-h, -h), (h, -h), (h, h), (-h, h)]
                    .into_iter()
                    .map(move |(dx, dy)| {
                        Point::new((p.x + dx).clamp(0.0, 1.0), (p.y + dy).clamp(0.0, 1.0))
                    })
            })
            .collect();
        polygon_area(&convex_hull(&corners))
    } else {
        polygon_area(&convex_hull(points))
    };
    area.clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniformity {
    pub e_u_raw: f64,
    pub uniformity: f64,
    pub mean_distance: f64,
}

pub fn energy_uniformity(points: &[Point], center: Point) -> Uniformity {
    let n = points.len().max(1) as f64;
    let d: Vec<f64> = points
        .iter()
        .map(|p| p.distance(center) / std::f64::consts::SQRT_2)
        .collect();
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    Uniformity {
        e_u_raw: var,
        uniformity: 1.0 - (4.0 * var).min(1.0),
        mean_distance: mean,
    }
}

/// Scores one point set. All quantities are in normalized canvas units, so
/// the canvas only matters through validation.
pub fn score_points(
    layout_id: &str,
    points: &[Point],
    pivot: Option<&PivotPlacement>,
    weights: EnergyWeights,
) -> LayoutScore {
    let e_o = energy_overlap(points, pivot);
    let e_c = energy_coverage(points, true);
    let center = pivot.map_or(Point::new(0.5, 0.5), |p| pivot_center(&p.bbox));
    let u = energy_uniformity(points, center);
    let e_l = f64::from(e_o) * (weights.alpha * e_c + (1.0 - weights.alpha) * u.uniformity);
    LayoutScore {
        layout_id: layout_id.to_string(),
        e_o,
        e_c,
        e_u_raw: u.e_u_raw,
        uniformity: u.uniformity,
        mean_distance: u.mean_distance,
        vg_count: points.len(),
        e_l,
        truncated: false,
    }
}

pub fn score_layout(
    layout: &VifLayout,
    _canvas: &Canvas,
    pivot: Option<&PivotPlacement>,
    weights: EnergyWeights,
) -> LayoutScore {
    score_points(&layout.id, &layout.points, pivot, weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RankOptions {
    /// Allow layouts with more points than requested, truncated to the
    /// first `n` points and flagged.
    pub truncate_fallback: bool,
}

/// Sort key shared by every ranking: score descending, then id ascending.
pub(crate) fn by_score_then_id(a: (f64, &str), b: (f64, &str)) -> Ordering {
    b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1))
}

pub fn rank_layouts(
    store: &AssetStore,
    canvas: &Canvas,
    pivot: Option<&PivotPlacement>,
    n_vgs: usize,
    weights: EnergyWeights,
    top_k: usize,
    options: RankOptions,
) -> Result<Vec<LayoutScore>, LayoutError> {
    if n_vgs == 0 || top_k == 0 {
        return Err(LayoutError::InvalidRequest("n_vgs and top_k must be >= 1".into()));
    }
    canvas.validate()?;
    let mut scores: Vec<LayoutScore> = store
        .layouts_with_count(n_vgs)
        .into_iter()
        .map(|l| score_layout(l, canvas, pivot, weights))
        .collect();
    if scores.is_empty() && options.truncate_fallback {
        scores = store
            .layouts()
            .iter()
            .filter(|l| l.points.len() > n_vgs)
            .map(|l| {
                let mut s = score_points(&l.id, &l.points[..n_vgs], pivot, weights);
                s.truncated = true;
                s
            })
            .collect();
    }
    if scores.is_empty() {
        return Err(LayoutError::NoCandidates(n_vgs));
    }
    scores.sort_by(|a, b| by_score_then_id((a.e_l, &a.layout_id), (b.e_l, &b.layout_id)));
    scores.truncate(top_k);
    Ok(scores)
}

/// Coordinate frame of a raw stroke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SketchSpace {
    /// Pixels on the target canvas.
    #[default]
    CanvasPx,
    /// Already in canvas fractions.
    Normalized,
}

/// A freehand stroke as received from a client.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sketch {
    pub points: Vec<Point>,
    #[serde(default)]
    pub space: SketchSpace,
}

impl Sketch {
    /// The stroke in canvas fractions, clamped to the unit square.
    pub fn normalized(&self, canvas: &Canvas) -> Vec<Point> {
        normalize_stroke(&self.points, self.space, canvas)
    }

    pub fn polyline(&self, canvas: &Canvas) -> Result<Polyline, LayoutError> {
        Ok(Polyline::new(self.normalized(canvas))?)
    }
}

pub fn normalize_stroke(points: &[Point], space: SketchSpace, canvas: &Canvas) -> Vec<Point> {
    points
        .iter()
        .map(|&p| {
            let q = match space {
                SketchSpace::CanvasPx => canvas.to_fraction(p),
                SketchSpace::Normalized => p,
            };
            Point::new(q.x.clamp(0.0, 1.0), q.y.clamp(0.0, 1.0))
        })
        .collect()
}

/// Turns dominant points into exactly `n` estimated VG positions.
///
/// Detected corners are kept. Missing positions are spread over the
/// segments in proportion to their length; surplus interior points are
/// dropped least-significant first.
pub fn fit_point_count(dominant: &[Point], n: usize) -> Vec<Point> {
    assert!(dominant.len() >= 2 && n >= 2);
    let mut pts = dominant.to_vec();
    while pts.len() > n {
        let (i, _) = crate::geometry::least_significant(&pts);
        pts.remove(i);
    }
    if pts.len() == n {
        return pts;
    }

    let extra = n - pts.len();
    let lengths: Vec<f64> = pts.windows(2).map(|w| w[0].distance(w[1])).collect();
    let total: f64 = lengths.iter().sum();
    if total == 0.0 {
        return resample_to_n(&pts, n);
    }
    // largest-remainder apportionment of the extra points
    let quotas: Vec<f64> = lengths.iter().map(|l| l / total * extra as f64).collect();
    let mut alloc: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut left = extra - alloc.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in &order {
        if left == 0 {
            break;
        }
        alloc[i] += 1;
        left -= 1;
    }

    let mut out = vec![pts[0]];
    for (i, w) in pts.windows(2).enumerate() {
        let seg = resample_to_n(w, alloc[i] + 2);
        out.extend_from_slice(&seg[1..]);
    }
    out
}

/// Mean distance between corresponding points, minimized over both
/// traversal directions of `a`.
pub fn sketch_distance(a: &[Point], b: &[Point]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() as f64;
    let fwd: f64 = a.iter().zip(b).map(|(p, q)| p.distance(*q)).sum::<f64>() / n;
    let rev: f64 = a.iter().rev().zip(b).map(|(p, q)| p.distance(*q)).sum::<f64>() / n;
    fwd.min(rev)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SketchMatch {
    pub layout_id: String,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SketchMatches {
    /// Estimated VG positions extracted from the stroke.
    pub estimated_points: Vec<Point>,
    pub ranked: Vec<SketchMatch>,
    /// Layouts that matched but touch the pivot box.
    pub gated_out: Vec<SketchMatch>,
}

/// Nearest corpus layouts to a hand-drawn stroke given in canvas fractions.
pub fn match_sketch(
    store: &AssetStore,
    stroke: &Polyline,
    n_vgs: usize,
    top_k: usize,
    pivot: Option<&PivotPlacement>,
) -> Result<SketchMatches, LayoutError> {
    if n_vgs < 2 {
        return Err(LayoutError::InvalidRequest("sketch matching needs n_vgs >= 2".into()));
    }
    let dominant = dominant_points(stroke)?;
    let estimated = fit_point_count(&dominant, n_vgs);

    let candidates = store.layouts_with_count(n_vgs);
    if candidates.is_empty() {
        return Err(LayoutError::NoCandidates(n_vgs));
    }
    let mut all: Vec<(SketchMatch, bool)> = candidates
        .into_iter()
        .map(|l| {
            let m = SketchMatch {
                layout_id: l.id.clone(),
                distance: sketch_distance(&estimated, &l.points),
            };
            (m, energy_overlap(&l.points, pivot) == 1)
        })
        .collect();
    all.sort_by(|(a, _), (b, _)| {
        a.distance
            .total_cmp(&b.distance)
            .then_with(|| a.layout_id.cmp(&b.layout_id))
    });
    let (ranked, gated): (Vec<_>, Vec<_>) = all.into_iter().partition(|(_, ok)| *ok);
    let mut ranked: Vec<SketchMatch> = ranked.into_iter().map(|(m, _)| m).collect();
    ranked.truncate(top_k);
    Ok(SketchMatches {
        estimated_points: estimated,
        ranked,
        gated_out: gated.into_iter().map(|(m, _)| m).collect(),
    })
}
