//! Geometric primitives shared by layout scoring, sketch matching and placement.
//!
//! All layout math happens in normalized canvas fractions: origin at the
//! top-left corner, `y` growing downward, both axes in `[0, 1]`.

mod dominant;
mod hull;

pub use dominant::{dominant_points, dominant_points_with, smooth_stroke, DominantPointParams};
pub(crate) use dominant::least_significant;
pub use hull::{convex_hull, point_in_convex_polygon, polygon_area};

use crate::color::Rgb;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("stroke needs at least 2 distinct points, got {0}")]
    StrokeTooShort(usize),
    #[error("bounding box must have positive size and lie inside the unit square")]
    InvalidBBox,
    #[error("canvas must be at least 64x64 pixels, got {0}x{1}")]
    CanvasTooSmall(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }

    pub fn midpoint(self, other: Point) -> Point {
        self.lerp(other, 0.5)
    }

    pub fn is_normalized(self) -> bool {
        (0.0..=1.0).contains(&self.x) && (0.0..=1.0).contains(&self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

/// Z component of `(a - o) x (b - o)`.
pub(crate) fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Axis-aligned box in canvas fractions; `(x, y)` is the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl BBox {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Result<Self, GeometryError> {
        let b = BBox { x, y, w, h };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        const EPS: f64 = 1e-9;
        let ok = [self.x, self.y, self.w, self.h].iter().all(|v| v.is_finite())
            && self.w > 0.0
            && self.h > 0.0
            && self.x >= -EPS
            && self.y >= -EPS
            && self.x + self.w <= 1.0 + EPS
            && self.y + self.h <= 1.0 + EPS;
        if ok {
            Ok(())
        } else {
            Err(GeometryError::InvalidBBox)
        }
    }

    pub fn center(&self) -> Point {
        Point::new(self.x + self.w / 2.0, self.y + self.h / 2.0)
    }

    /// Closed containment: points on the boundary count as inside.
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x && p.x <= self.x + self.w && p.y >= self.y && p.y <= self.y + self.h
    }
}

/// Output surface in pixels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Canvas {
    pub width_px: u32,
    pub height_px: u32,
    #[serde(default = "default_background")]
    pub background: Rgb,
}

fn default_background() -> Rgb {
    Rgb(255, 255, 255)
}

impl Canvas {
    pub const MIN_SIDE: u32 = 64;

    pub fn new(width_px: u32, height_px: u32) -> Result<Self, GeometryError> {
        let c = Canvas {
            width_px,
            height_px,
            background: default_background(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_background(mut self, background: Rgb) -> Self {
        self.background = background;
        self
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.width_px < Self::MIN_SIDE || self.height_px < Self::MIN_SIDE {
            return Err(GeometryError::CanvasTooSmall(self.width_px, self.height_px));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        f64::from(self.width_px)
    }

    pub fn height(&self) -> f64 {
        f64::from(self.height_px)
    }

    pub fn min_side(&self) -> f64 {
        self.width().min(self.height())
    }

    pub fn to_px(&self, p: Point) -> Point {
        Point::new(p.x * self.width(), p.y * self.height())
    }

    pub fn to_fraction(&self, p: Point) -> Point {
        Point::new(p.x / self.width(), p.y / self.height())
    }
}

/// An ordered stroke with consecutive duplicates removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<Point>,
}

impl Polyline {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<Self, GeometryError> {
        let mut out: Vec<Point> = Vec::new();
        for p in points {
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
        if out.len() < 2 {
            return Err(GeometryError::StrokeTooShort(out.len()));
        }
        Ok(Polyline { points: out })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn length(&self) -> f64 {
        path_length(&self.points)
    }
}

pub fn path_length(points: &[Point]) -> f64 {
    points.windows(2).map(|w| w[0].distance(w[1])).sum()
}

/// `n` points equally spaced by arc length along the path through `points`.
/// The first and last input points are preserved exactly.
pub fn resample_to_n(points: &[Point], n: usize) -> Vec<Point> {
    assert!(points.len() >= 2, "resample_to_n needs at least 2 points");
    assert!(n >= 2, "resample_to_n needs n >= 2");
    let total = path_length(points);
    let first = points[0];
    let last = points[points.len() - 1];
    if total == 0.0 {
        return vec![first; n];
    }

    // cumulative arc length at each input vertex
    let mut cum = Vec::with_capacity(points.len());
    let mut acc = 0.0;
    cum.push(0.0);
    for w in points.windows(2) {
        acc += w[0].distance(w[1]);
        cum.push(acc);
    }

    let mut out = Vec::with_capacity(n);
    out.push(first);
    let mut seg = 0;
    for i in 1..n - 1 {
        let target = total * i as f64 / (n - 1) as f64;
        while seg + 1 < points.len() - 1 && cum[seg + 1] < target {
            seg += 1;
        }
        let span = cum[seg + 1] - cum[seg];
        let t = if span > 0.0 {
            (target - cum[seg]) / span
        } else {
            0.0
        };
        out.push(points[seg].lerp(points[seg + 1], t));
    }
    out.push(last);
    out
}
