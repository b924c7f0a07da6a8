use super::{cross, Point};

/// Convex hull by Andrew's monotone chain.
///
/// Vertices come back counter-clockwise in the mathematical orientation
/// (positive shoelace sum). Collinear input collapses to its two extreme
/// points, a single distinct point to itself.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }

    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.truncate(1);
    }
    lower
}

/// Shoelace area; zero for points and segments.
pub fn polygon_area(polygon: &[Point]) -> f64 {
    if polygon.len() < 3 {
        return 0.0;
    }
    let n = polygon.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let a = polygon[i];
            let b = polygon[(i + 1) % n];
            a.x * b.y - b.x * a.y
        })
        .sum();
    twice.abs() / 2.0
}

/// Inside-or-on test against a hull from [`convex_hull`].
pub fn point_in_convex_polygon(polygon: &[Point], p: Point, eps: f64) -> bool {
    match polygon.len() {
        0 => false,
        1 => polygon[0].distance(p) <= eps,
        2 => {
            let (a, b) = (polygon[0], polygon[1]);
            let len = a.distance(b);
            let off = cross(a, b, p).abs() / len;
            let t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (len * len);
            off <= eps && (-eps..=1.0 + eps).contains(&t)
        }
        n => (0..n).all(|i| {
            let a = polygon[i];
            let b = polygon[(i + 1) % n];
            cross(a, b, p) / a.distance(b) >= -eps
        }),
    }
}
