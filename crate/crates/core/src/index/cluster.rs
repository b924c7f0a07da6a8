//! Density-seeded clustering in the planar embedding.
//!
//! DBSCAN finds the dense regions; the centroids of the `k` largest seed
//! Lloyd iterations that run until no assignment changes. When DBSCAN
//! returns more than `k` regions its radius is widened until they merge. If DBSCAN finds
//! fewer than `k` regions the missing centers come from k-means++ seeding
//! and the shortfall is reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_MIN_PTS: usize = 4;
const MAX_LLOYD_ITERATIONS: usize = 500;
const EPS_GROWTH: f64 = 1.1;

pub type Planar = [f64; 2];

fn dist(a: Planar, b: Planar) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Classic DBSCAN. Returns a cluster label per point (`None` for noise),
/// labels numbered in order of discovery.
pub fn dbscan(points: &[Planar], eps: f64, min_pts: usize) -> Vec<Option<usize>> {
    let n = points.len();
    let neighbors = |i: usize| -> Vec<usize> {
        (0..n).filter(|&j| dist(points[i], points[j]) <= eps).collect()
    };
    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut next = 0;
    for i in 0..n {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let seeds = neighbors(i);
        if seeds.len() < min_pts {
            continue;
        }
        labels[i] = Some(next);
        let mut queue = seeds;
        let mut q = 0;
        while q < queue.len() {
            let j = queue[q];
            q += 1;
            if labels[j].is_none() {
                labels[j] = Some(next);
            }
            if visited[j] {
                continue;
            }
            visited[j] = true;
            let nb = neighbors(j);
            if nb.len() >= min_pts {
                queue.extend(nb);
            }
        }
        next += 1;
    }
    labels
}

/// Knee of the sorted k-distance curve: the sample farthest from the chord
/// joining the curve's ends.
pub fn elbow_eps(points: &[Planar], k: usize) -> f64 {
    let n = points.len();
    if n <= k {
        return 0.0;
    }
    let mut kd: Vec<f64> = (0..n)
        .map(|i| {
            let mut d: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| dist(points[i], points[j])).collect();
            d.sort_by(f64::total_cmp);
            d[k - 1]
        })
        .collect();
    kd.sort_by(f64::total_cmp);
    let (x0, y0) = (0.0, kd[0]);
    let (x1, y1) = ((n - 1) as f64, kd[n - 1]);
    let (dx, dy) = (x1 - x0, y1 - y0);
    let norm = dx.hypot(dy);
    let mut best = (0, -1.0);
    for (i, &v) in kd.iter().enumerate() {
        let off = (dy * i as f64 - dx * (v - y0)).abs() / norm;
        if off > best.1 {
            best = (i, off);
        }
    }
    kd[best.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterDiagnostics {
    pub eps: f64,
    pub min_pts: usize,
    pub density_peaks: usize,
    /// Fewer density peaks than clusters; the rest were seeded by k-means++.
    pub insufficient_density: bool,
    pub lloyd_iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub centers: Vec<Planar>,
    pub labels: Vec<usize>,
    pub diagnostics: ClusterDiagnostics,
}

pub fn cluster_planar(points: &[Planar], k: usize, min_pts: usize, seed: u64) -> Clustering {
    assert!(k >= 1 && points.len() >= k, "need at least k points");
    let mut eps = elbow_eps(points, min_pts);
    let mut labels = dbscan(points, eps, min_pts);
    let mut found = region_count(&labels);
    // Over-segmentation splits a dense region into fragments, and two
    // fragments of one region would both become centers. Widen until the
    // fragments join.
    while found > k && eps > 0.0 {
        eps *= EPS_GROWTH;
        labels = dbscan(points, eps, min_pts);
        found = region_count(&labels);
    }

    let mut regions: Vec<Vec<usize>> = vec![Vec::new(); found];
    for (i, l) in labels.iter().enumerate() {
        if let Some(l) = l {
            regions[*l].push(i);
        }
    }
    // densest first; discovery order breaks ties
    let mut order: Vec<usize> = (0..found).collect();
    order.sort_by(|&a, &b| regions[b].len().cmp(&regions[a].len()).then(a.cmp(&b)));
    let mut centers: Vec<Planar> = order.iter().take(k).map(|&r| centroid(points, &regions[r])).collect();

    let insufficient = centers.len() < k;
    if insufficient {
        kmeans_pp_complete(points, &mut centers, k, seed);
    }

    let mut assign = vec![usize::MAX; points.len()];
    let mut iterations = 0;
    loop {
        let next: Vec<usize> = points.iter().map(|&p| nearest(&centers, p)).collect();
        iterations += 1;
        let stable = next == assign;
        assign = next;
        if stable || iterations >= MAX_LLOYD_ITERATIONS {
            break;
        }
        for c in 0..k {
            let members: Vec<usize> = (0..points.len()).filter(|&i| assign[i] == c).collect();
            if members.is_empty() {
                // reseed on the point worst served by its center
                let far = farthest_point(points, &centers, &assign);
                centers[c] = points[far];
            } else {
                centers[c] = centroid(points, &members);
            }
        }
    }
    repair_empty(points, &centers, &mut assign, k);

    Clustering {
        centers,
        labels: assign,
        diagnostics: ClusterDiagnostics {
            eps,
            min_pts,
            density_peaks: found,
            insufficient_density: insufficient,
            lloyd_iterations: iterations,
        },
    }
}

fn region_count(labels: &[Option<usize>]) -> usize {
    labels.iter().flatten().max().map_or(0, |m| m + 1)
}

fn centroid(points: &[Planar], idx: &[usize]) -> Planar {
    let n = idx.len() as f64;
    [
        idx.iter().map(|&i| points[i][0]).sum::<f64>() / n,
        idx.iter().map(|&i| points[i][1]).sum::<f64>() / n,
    ]
}

fn nearest(centers: &[Planar], p: Planar) -> usize {
    let mut best = (0, f64::INFINITY);
    for (c, &q) in centers.iter().enumerate() {
        let d = dist(p, q);
        if d < best.1 {
            best = (c, d);
        }
    }
    best.0
}

fn farthest_point(points: &[Planar], centers: &[Planar], assign: &[usize]) -> usize {
    let mut best = (0, -1.0);
    for (i, &p) in points.iter().enumerate() {
        let d = dist(p, centers[assign[i]]);
        if d > best.1 {
            best = (i, d);
        }
    }
    best.0
}

fn kmeans_pp_complete(points: &[Planar], centers: &mut Vec<Planar>, k: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if centers.is_empty() {
        centers.push(points[rng.random_range(0..points.len())]);
    }
    while centers.len() < k {
        let d2: Vec<f64> = points
            .iter()
            .map(|&p| centers.iter().map(|&c| dist(p, c).powi(2)).fold(f64::INFINITY, f64::min))
            .collect();
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.random::<f64>() * total;
            let mut pick = d2.len() - 1;
            for (i, w) in d2.iter().enumerate() {
                if r < *w {
                    pick = i;
                    break;
                }
                r -= w;
            }
            pick
        } else {
            rng.random_range(0..points.len())
        };
        centers.push(points[pick]);
    }
}

/// Lloyd can leave a cluster empty when points coincide. Hand each empty
/// cluster the worst-served point of a cluster that can spare one.
fn repair_empty(points: &[Planar], centers: &[Planar], assign: &mut [usize], k: usize) {
    loop {
        let mut sizes = vec![0usize; k];
        for &a in assign.iter() {
            sizes[a] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return;
        };
        let mut best: Option<(usize, f64)> = None;
        for (i, &p) in points.iter().enumerate() {
            if sizes[assign[i]] < 2 {
                continue;
            }
            let d = dist(p, centers[assign[i]]);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((i, d));
            }
        }
        match best {
            Some((i, _)) => assign[i] = empty,
            None => return,
        }
    }
}
