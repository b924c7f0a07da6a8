//! Dominant-point detection on freehand strokes.
//!
//! Each sample gets a region of support grown until the chord stops
//! lengthening or the chord-relative deflection stops increasing; its
//! significance is the k-cosine over that region. Local maxima survive
//! non-maximum suppression; a top-down chord-deviation pass then drops
//! survivors that only trace noise along a straight run.

use super::{cross, GeometryError, Point, Polyline};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominantPointParams {
    /// Moving-average window applied before detection (odd, 1 disables).
    pub smoothing_window: usize,
    /// Strokes are densified so no segment exceeds `diag / densify_divisions`.
    pub densify_divisions: usize,
    /// Survivors are kept only while they deviate from the chord of the
    /// enclosing kept pair by at least `collinear_tolerance * diag`.
    pub collinear_tolerance: f64,
}

impl Default for DominantPointParams {
    fn default() -> Self {
        DominantPointParams {
            smoothing_window: 5,
            densify_divisions: 400,
            collinear_tolerance: 0.03,
        }
    }
}

pub fn dominant_points(stroke: &Polyline) -> Result<Vec<Point>, GeometryError> {
    dominant_points_with(stroke, &DominantPointParams::default())
}

pub fn dominant_points_with(
    stroke: &Polyline,
    params: &DominantPointParams,
) -> Result<Vec<Point>, GeometryError> {
    let raw = stroke.points();
    if raw.len() < 2 {
        return Err(GeometryError::StrokeTooShort(raw.len()));
    }
    let diag = bbox_diagonal(raw);
    if diag == 0.0 {
        return Err(GeometryError::StrokeTooShort(1));
    }

    let dense = densify(raw, diag / params.densify_divisions.max(1) as f64);
    let smooth = smooth_stroke(&dense, params.smoothing_window);
    let keep = teh_chin(&smooth);

    let mut picked: Vec<Point> = keep.iter().map(|&i| smooth[i]).collect();
    // endpoints are taken from the raw stroke, untouched by smoothing
    picked[0] = raw[0];
    let last = picked.len() - 1;
    picked[last] = raw[raw.len() - 1];

    let tol = params.collinear_tolerance * diag;
    Ok(douglas_peucker(&picked, tol))
}

/// Top-down selection among the candidates: keep the candidate farthest
/// from the current chord while it deviates by at least `tol`.
fn douglas_peucker(points: &[Point], tol: f64) -> Vec<Point> {
    let n = points.len();
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0usize, n - 1)];
    while let Some((a, b)) = stack.pop() {
        if b <= a + 1 {
            continue;
        }
        let mut best = (a, -1.0);
        for i in a + 1..b {
            let d = chord_deviation(points[a], points[i], points[b]);
            if d > best.1 {
                best = (i, d);
            }
        }
        if best.1 >= tol {
            keep[best.0] = true;
            stack.push((a, best.0));
            stack.push((best.0, b));
        }
    }
    points
        .iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(*p))
        .collect()
}

/// Index and chord deviation of the interior point that contributes least
/// to the shape. Ties go to the lowest index.
pub(crate) fn least_significant(points: &[Point]) -> (usize, f64) {
    let mut best = (1, f64::INFINITY);
    for i in 1..points.len() - 1 {
        let d = chord_deviation(points[i - 1], points[i], points[i + 1]);
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

fn chord_deviation(a: Point, p: Point, b: Point) -> f64 {
    let len = a.distance(b);
    if len == 0.0 {
        p.distance(a)
    } else {
        cross(a, b, p).abs() / len
    }
}

fn bbox_diagonal(points: &[Point]) -> f64 {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    (x1 - x0).hypot(y1 - y0)
}

/// Subdivides every segment longer than `step`, keeping original vertices.
fn densify(points: &[Point], step: f64) -> Vec<Point> {
    let mut out = vec![points[0]];
    for w in points.windows(2) {
        let len = w[0].distance(w[1]);
        let pieces = (len / step).ceil().max(1.0) as usize;
        for j in 1..=pieces {
            out.push(w[0].lerp(w[1], j as f64 / pieces as f64));
        }
    }
    out
}

/// Centered moving average; the window shrinks symmetrically near the ends
/// so the first and last samples stay fixed.
pub fn smooth_stroke(points: &[Point], window: usize) -> Vec<Point> {
    let half = window / 2;
    let n = points.len();
    (0..n)
        .map(|i| {
            let r = half.min(i).min(n - 1 - i);
            let slice = &points[i - r..=i + r];
            let m = slice.len() as f64;
            Point::new(
                slice.iter().map(|p| p.x).sum::<f64>() / m,
                slice.iter().map(|p| p.y).sum::<f64>() / m,
            )
        })
        .collect()
}

/// Returns ascending sample indices of dominant points, endpoints included.
fn teh_chin(p: &[Point]) -> Vec<usize> {
    let n = p.len();
    if n <= 2 {
        return (0..n).collect();
    }

    let chord = |i: usize, k: usize| -> (f64, f64) {
        let a = p[i - k];
        let b = p[i + k];
        let l = a.distance(b);
        let d = if l == 0.0 { 0.0 } else { cross(a, b, p[i]) / l };
        (l, d)
    };

    let mut support = vec![0usize; n];
    let mut significance = vec![f64::NEG_INFINITY; n];
    for i in 1..n - 1 {
        let k_max = i.min(n - 1 - i);
        let mut k = 1;
        while k < k_max {
            let (l0, d0) = chord(i, k);
            let (l1, d1) = chord(i, k + 1);
            if l0 >= l1 {
                break;
            }
            let r0 = if l0 > 0.0 { d0 / l0 } else { 0.0 };
            let r1 = d1 / l1;
            if (d0 > 0.0 && r0 >= r1) || (d0 < 0.0 && r0 <= r1) {
                break;
            }
            k += 1;
        }
        support[i] = k;
        significance[i] = k_cosine(p, i, k);
    }

    // non-maximum suppression over half the region of support
    let mut alive = vec![false; n];
    for i in 1..n - 1 {
        let reach = support[i] / 2;
        let lo = i.saturating_sub(reach).max(1);
        let hi = (i + reach).min(n - 2);
        alive[i] = (lo..=hi).all(|j| significance[i] >= significance[j]);
    }
    // a unit-support survivor yields to an adjacent survivor that is at
    // least as significant
    for i in 1..n - 1 {
        if alive[i] && support[i] == 1 {
            let left = alive[i - 1] && significance[i - 1] >= significance[i];
            let right = i + 1 < n - 1 && alive[i + 1] && significance[i + 1] > significance[i];
            if left || right {
                alive[i] = false;
            }
        }
    }
    alive[0] = true;
    alive[n - 1] = true;
    (0..n).filter(|&i| alive[i]).collect()
}

fn k_cosine(p: &[Point], i: usize, k: usize) -> f64 {
    let a = p[i - k] - p[i];
    let b = p[i + k] - p[i];
    let na = a.x.hypot(a.y);
    let nb = b.x.hypot(b.y);
    if na == 0.0 || nb == 0.0 {
        return -1.0;
    }
    (a.x * b.x + a.y * b.y) / (na * nb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn sample_path(corners: &[Point], per_segment: usize) -> Vec<Point> {
        let mut out = vec![corners[0]];
        for w in corners.windows(2) {
            for j in 1..=per_segment {
                out.push(w[0].lerp(w[1], j as f64 / per_segment as f64));
            }
        }
        out
    }

    #[test]
    fn l_shape_gives_endpoints_and_corner() {
        let stroke = Polyline::new([p(0.1, 0.1), p(0.1, 0.9), p(0.9, 0.9)]).unwrap();
        let d = dominant_points(&stroke).unwrap();
        assert_eq!(d.len(), 3, "{d:?}");
        assert!(d[1].distance(p(0.1, 0.9)) < 0.01);
    }

    #[test]
    fn dense_l_shape() {
        let pts = sample_path(&[p(0.1, 0.1), p(0.1, 0.9), p(0.9, 0.9)], 50);
        let d = dominant_points(&Polyline::new(pts).unwrap()).unwrap();
        assert_eq!(d.len(), 3, "{d:?}");
    }

    #[test]
    fn straight_line_has_only_endpoints() {
        let pts: Vec<Point> = (0..100).map(|i| p(0.05 + 0.009 * i as f64, 0.5)).collect();
        let d = dominant_points(&Polyline::new(pts).unwrap()).unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn output_never_larger_than_input() {
        let pts = [p(0.0, 0.0), p(0.5, 0.4), p(1.0, 0.0)];
        let d = dominant_points(&Polyline::new(pts).unwrap()).unwrap();
        assert!(d.len() <= 3);
    }

    #[test]
    fn noisy_zigzag_recovers_corners() {
        // zigzag with 4 interior corners; 6 dominant points expected
        let truth = [
            p(0.05, 0.5),
            p(0.23, 0.2),
            p(0.41, 0.8),
            p(0.59, 0.2),
            p(0.77, 0.8),
            p(0.95, 0.5),
        ];
        let noise = Normal::new(0.0, 0.005).unwrap();
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let noisy: Vec<Point> = sample_path(&truth, 40)
                .into_iter()
                .map(|q| p(q.x + noise.sample(&mut rng), q.y + noise.sample(&mut rng)))
                .collect();
            let d = dominant_points(&Polyline::new(noisy).unwrap()).unwrap();
            assert_eq!(d.len(), 6, "seed {seed}: {d:?}");
            for (got, want) in d.iter().zip(&truth) {
                assert!(got.distance(*want) < 0.02, "seed {seed}: {got:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn too_short() {
        let s = Polyline::new([p(0.0, 0.0), p(0.0, 0.0), p(0.0, 0.0)]);
        assert!(matches!(s, Err(GeometryError::StrokeTooShort(1))));
    }

    #[test]
    fn smoothing_keeps_endpoints() {
        let pts = sample_path(&[p(0.0, 0.0), p(0.5, 0.5), p(1.0, 0.0)], 5);
        let s = smooth_stroke(&pts, 5);
        assert_eq!(s[0], pts[0]);
        assert_eq!(s[s.len() - 1], pts[pts.len() - 1]);
        assert_eq!(s.len(), pts.len());
    }
}
