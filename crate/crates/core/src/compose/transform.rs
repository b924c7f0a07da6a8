use super::ComposeError;
use crate::geometry::{Canvas, Point};
use crate::layout::{pivot_center, PivotPlacement};
use serde::{Deserialize, Serialize};

/// Longest VG side at scale 1, as a fraction of the shorter canvas side.
pub const VG_SIDE_FRACTION: f64 = 0.22;
pub const MIN_SCALE: f64 = 0.25;
pub const MAX_SCALE: f64 = 1.0;
/// Clearance kept between boxes so that touching never rounds to overlap.
const CLEARANCE_PX: f64 = 1e-6;

/// Axis-aligned rectangle in canvas pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PxRect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl PxRect {
    pub fn centered(c: Point, w: f64, h: f64) -> Self {
        PxRect {
            x0: c.x - w / 2.0,
            y0: c.y - h / 2.0,
            x1: c.x + w / 2.0,
            y1: c.y + h / 2.0,
        }
    }

    pub fn intersection_area(&self, o: &PxRect) -> f64 {
        let w = self.x1.min(o.x1) - self.x0.max(o.x0);
        let h = self.y1.min(o.y1) - self.y0.max(o.y0);
        if w > 0.0 && h > 0.0 {
            w * h
        } else {
            0.0
        }
    }

    pub fn inflate(&self, m: f64) -> Self {
        PxRect {
            x0: self.x0 - m,
            y0: self.y0 - m,
            x1: self.x1 + m,
            y1: self.y1 + m,
        }
    }

    pub fn within(&self, width: f64, height: f64) -> bool {
        self.x0 >= 0.0 && self.y0 >= 0.0 && self.x1 <= width && self.y1 <= height
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VgTransform {
    pub item_index: usize,
    /// VG center, in canvas fractions.
    pub position: Point,
    /// Clockwise on screen, in `[0, 360)`.
    pub rotation_deg: f64,
    /// Uniform scale factor in `[MIN_SCALE, MAX_SCALE]`.
    pub scale: f64,
    /// Unrotated VG size in pixels.
    pub footprint_px: [f64; 2],
}

impl VgTransform {
    pub fn center_px(&self, canvas: &Canvas) -> Point {
        canvas.to_px(self.position)
    }

    /// Box covering the VG both as rotated and unrotated, since its content
    /// is drawn upright inside the rotated shape.
    pub fn bbox_px(&self, canvas: &Canvas) -> PxRect {
        let [w, h] = self.footprint_px;
        let t = self.rotation_deg.to_radians();
        let (s, c) = (t.sin().abs(), t.cos().abs());
        let rw = (w * c + h * s).max(w);
        let rh = (w * s + h * c).max(h);
        PxRect::centered(self.center_px(canvas), rw, rh)
    }

    /// Pixels per design unit.
    pub fn unit_scale(&self, native: (f64, f64)) -> f64 {
        self.footprint_px[0] / native.0
    }
}

/// Clockwise angle from "up" to the direction `from -> to`, measured in
/// pixel space so that the facing is correct on non-square canvases.
pub fn facing_angle(from: Point, to: Point, canvas: &Canvas) -> f64 {
    let a = canvas.to_px(from);
    let b = canvas.to_px(to);
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    if dx == 0.0 && dy == 0.0 {
        return 0.0;
    }
    let deg = dx.atan2(-dy).to_degrees();
    let deg = deg.rem_euclid(360.0);
    if deg >= 360.0 {
        0.0
    } else {
        deg
    }
}

fn footprint(native: (f64, f64), s: f64, canvas: &Canvas) -> [f64; 2] {
    let long = s * VG_SIDE_FRACTION * canvas.min_side();
    let m = native.0.max(native.1);
    [native.0 / m * long, native.1 / m * long]
}

/// Places one VG per layout point, facing the pivot, at the largest common
/// scale that keeps every VG inside the canvas, clear of the others and
/// clear of the pivot box.
pub fn compute_transforms(
    points: &[Point],
    canvas: &Canvas,
    pivot: Option<&PivotPlacement>,
    native: (f64, f64),
) -> Result<Vec<VgTransform>, ComposeError> {
    let rotations: Vec<f64> = points
        .iter()
        .map(|&p| pivot.map_or(0.0, |pv| facing_angle(p, pivot_center(&pv.bbox), canvas)))
        .collect();
    let pivot_px = pivot.map(|pv| {
        let b = pv.bbox;
        PxRect {
            x0: b.x * canvas.width(),
            y0: b.y * canvas.height(),
            x1: (b.x + b.w) * canvas.width(),
            y1: (b.y + b.h) * canvas.height(),
        }
    });

    let build = |s: f64| -> Vec<VgTransform> {
        points
            .iter()
            .zip(&rotations)
            .enumerate()
            .map(|(i, (&p, &r))| VgTransform {
                item_index: i,
                position: p,
                rotation_deg: r,
                scale: s,
                footprint_px: footprint(native, s, canvas),
            })
            .collect()
    };
    let feasible = |s: f64| -> bool {
        let boxes: Vec<PxRect> = build(s)
            .iter()
            .map(|t| t.bbox_px(canvas).inflate(CLEARANCE_PX))
            .collect();
        let (w, h) = (canvas.width(), canvas.height());
        boxes.iter().enumerate().all(|(i, b)| {
            b.within(w, h)
                && pivot_px.is_none_or(|p| b.intersection_area(&p) == 0.0)
                && boxes[i + 1..].iter().all(|o| b.intersection_area(o) == 0.0)
        })
    };

    if feasible(MAX_SCALE) {
        return Ok(build(MAX_SCALE));
    }
    if !feasible(MIN_SCALE) {
        return Err(ComposeError::Unplaceable);
    }
    let (mut lo, mut hi) = (MIN_SCALE, MAX_SCALE);
    for _ in 0..50 {
        let mid = (lo + hi) / 2.0;
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(build(lo))
}
