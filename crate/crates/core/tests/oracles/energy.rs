//! Brute-force layout scorer written without the library's hull or stats.

use infoforge::assets::VifLayout;
use infoforge::geometry::{BBox, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Gift-wrapping hull area.
pub fn hull_area(pts: &[Point]) -> f64 {
    let start = *pts
        .iter()
        .min_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)))
        .unwrap();
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut next = pts[0];
        for &q in pts {
            if next == cur {
                next = q;
                continue;
            }
            let c = cross(cur, next, q);
            if c < 0.0 || (c == 0.0 && cur.distance(q) > cur.distance(next)) {
                next = q;
            }
        }
        if next == start || next == cur || hull.len() > pts.len() {
            break;
        }
        hull.push(next);
        cur = next;
    }
    let n = hull.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum();
    twice.abs() / 2.0
}

/// Layout energy from first principles.
pub fn score(points: &[Point], pivot: Option<&BBox>, alpha: f64) -> f64 {
    if let Some(b) = pivot {
        if points
            .iter()
            .any(|q| q.x >= b.x && q.x <= b.x + b.w && q.y >= b.y && q.y <= b.y + b.h)
        {
            return 0.0;
        }
    }
    let mut corners = Vec::new();
    for q in points {
        for (dx, dy) in [(-0.05, -0.05), (0.05, -0.05), (0.05, 0.05), (-0.05, 0.05)] {
            corners.push(Point::new((q.x + dx).clamp(0.0, 1.0), (q.y + dy).clamp(0.0, 1.0)));
        }
    }
    let coverage = hull_area(&corners).min(1.0);
    let (cx, cy) = pivot.map_or((0.5, 0.5), |b| (b.x + b.w / 2.0, b.y + b.h / 2.0));
    let d: Vec<f64> = points
        .iter()
        .map(|q| ((q.x - cx).powi(2) + (q.y - cy).powi(2)).sqrt() / 2f64.sqrt())
        .collect();
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|x| x * x).sum::<f64>() / n - mean * mean;
    let uniformity = 1.0 - (4.0 * var.max(0.0)).min(1.0);
    alpha * coverage + (1.0 - alpha) * uniformity
}

/// Ids in expected rank order: score descending, id ascending.
pub fn ranking(layouts: &[VifLayout], pivot: Option<&BBox>, alpha: f64) -> Vec<(String, f64)> {
    let mut out: Vec<(String, f64)> = layouts
        .iter()
        .map(|l| (l.id.clone(), score(&l.points, pivot, alpha)))
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Pairs of ids whose relative order differs between the two rankings.
pub fn inversions(got: &[&str], want: &[&str]) -> usize {
    let pos = |id: &str| want.iter().position(|w| *w == id);
    let mut bad = 0;
    for i in 0..got.len() {
        for j in i + 1..got.len() {
            match (pos(got[i]), pos(got[j])) {
                (Some(a), Some(b)) if a < b => {}
                _ => bad += 1,
            }
        }
    }
    bad + want.len().abs_diff(got.len())
}

pub fn random_layouts(seed: u64, count: usize, n: usize) -> Vec<VifLayout> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let pts = (0..n)
                .map(|_| Point::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)))
                .collect();
            VifLayout::new(format!("syn-{i:02}"), pts)
        })
        .collect()
}
