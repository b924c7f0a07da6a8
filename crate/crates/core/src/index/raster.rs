use crate::assets::VifLayout;
use crate::geometry::Point;

pub const RASTER_SIDE: usize = 64;

const STROKE_HALF_WIDTH: f64 = 1.0;
const DOT_RADIUS: f64 = 1.5;

/// Square binary image, row-major, `y` downward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    side: usize,
    bits: Vec<bool>,
}

impl Raster {
    pub fn blank(side: usize) -> Self {
        Raster {
            side,
            bits: vec![false; side * side],
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.side + x]
    }

    pub fn count_on(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn hamming(&self, other: &Raster) -> usize {
        assert_eq!(self.side, other.side);
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }

    pub fn to_vector(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
    }

    fn paint_where(&mut self, lo: Point, hi: Point, inside: impl Fn(Point) -> bool) {
        let max = (self.side - 1) as f64;
        let x0 = lo.x.floor().clamp(0.0, max) as usize;
        let x1 = hi.x.ceil().clamp(0.0, max) as usize;
        let y0 = lo.y.floor().clamp(0.0, max) as usize;
        let y1 = hi.y.ceil().clamp(0.0, max) as usize;
        for y in y0..=y1 {
            for x in x0..=x1 {
                if inside(Point::new(x as f64 + 0.5, y as f64 + 0.5)) {
                    self.bits[y * self.side + x] = true;
                }
            }
        }
    }
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.distance(Point::new(a.x + t * dx, a.y + t * dy))
}

/// Renders the layout polyline (2 px wide) with 3 px vertex dots.
pub fn rasterize_vif(layout: &VifLayout) -> Raster {
    rasterize_points(&layout.points, RASTER_SIDE)
}

pub fn rasterize_points(points: &[Point], side: usize) -> Raster {
    let mut r = Raster::blank(side);
    let s = side as f64;
    let px: Vec<Point> = points.iter().map(|p| Point::new(p.x * s, p.y * s)).collect();
    for w in px.windows(2) {
        let (a, b) = (w[0], w[1]);
        let pad = STROKE_HALF_WIDTH + 1.0;
        let lo = Point::new(a.x.min(b.x) - pad, a.y.min(b.y) - pad);
        let hi = Point::new(a.x.max(b.x) + pad, a.y.max(b.y) + pad);
        r.paint_where(lo, hi, |c| segment_distance(c, a, b) < STROKE_HALF_WIDTH);
    }
    for &v in &px {
        let pad = DOT_RADIUS + 1.0;
        let lo = Point::new(v.x - pad, v.y - pad);
        let hi = Point::new(v.x + pad, v.y + pad);
        r.paint_where(lo, hi, |c| c.distance(v) < DOT_RADIUS);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(points: &[(f64, f64)]) -> VifLayout {
        VifLayout::new("t", points.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    #[test]
    fn horizontal_layout_draws_rows_31_and_32() {
        let r = rasterize_vif(&layout(&[(0.1, 0.5), (0.9, 0.5)]));
        for x in 10..54 {
            assert!(r.get(x, 31) && r.get(x, 32), "column {x}");
            assert!(!r.get(x, 29) && !r.get(x, 34));
        }
        // left of the first vertex only the dot reaches
        assert!(r.get(5, 31));
        assert!(!r.get(4, 31));
    }

    #[test]
    fn identical_layouts_identical_rasters() {
        let l = layout(&[(0.2, 0.2), (0.8, 0.3), (0.5, 0.9)]);
        assert_eq!(rasterize_vif(&l), rasterize_vif(&l.clone()));
    }

    #[test]
    fn jitter_changes_few_pixels() {
        let base = [(0.1, 0.2), (0.4, 0.7), (0.6, 0.3), (0.9, 0.8)];
        let shifted: Vec<(f64, f64)> = base
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| {
                let s = if i % 2 == 0 { 0.01 } else { -0.01 };
                (x + s, y - s)
            })
            .collect();
        let a = rasterize_vif(&layout(&base));
        let b = rasterize_vif(&layout(&shifted));
        let limit = RASTER_SIDE * RASTER_SIDE * 5 / 100;
        assert!(a.hamming(&b) < limit, "{} >= {limit}", a.hamming(&b));
    }
}
