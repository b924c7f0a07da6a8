//! Twelve well-separated synthetic layout classes.

use infoforge::assets::{ClusterId, VifLayout};
use infoforge::geometry::Point;
use infoforge::index::ClusterModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub const CLASSES: usize = 12;

/// Ten jittered copies per class, ids `blobCC-V`.
pub fn blob_layouts() -> Vec<VifLayout> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut out = Vec::new();
    for c in 0..CLASSES as u32 {
        let (gx, gy) = (f64::from(c % 4), f64::from(c / 4));
        let ox = 0.06 + 0.24 * gx;
        let oy = 0.08 + 0.3 * gy;
        // each class gets its own cell and its own stroke shape
        let base: Vec<Point> = (0..5)
            .map(|i| {
                let t = f64::from(i) / 4.0;
                let wave = ((t * f64::from(c + 1)).sin() * 0.08).abs();
                Point::new(ox + 0.16 * t, oy + wave + 0.1 * t * f64::from(c % 3) / 2.0)
            })
            .collect();
        for v in 0..10 {
            let pts = base
                .iter()
                .map(|q| {
                    let dx = rng.random_range(-0.004..0.004);
                    let dy = rng.random_range(-0.004..0.004);
                    Point::new(q.x + dx, q.y + dy)
                })
                .collect();
            out.push(VifLayout::new(format!("blob{c:02}-{v}"), pts));
        }
    }
    out
}

pub fn class_of(layout_id: &str) -> &str {
    &layout_id[..6]
}

/// Classes found in each cluster.
pub fn cluster_classes(model: &ClusterModel) -> BTreeMap<ClusterId, BTreeSet<&str>> {
    let mut by_cluster: BTreeMap<ClusterId, BTreeSet<&str>> = BTreeMap::new();
    for m in &model.members {
        by_cluster.entry(m.cluster).or_default().insert(class_of(&m.layout_id));
    }
    by_cluster
}

/// Fraction of members that share their cluster's majority class.
pub fn purity(model: &ClusterModel) -> f64 {
    let mut counts: BTreeMap<ClusterId, BTreeMap<&str, usize>> = BTreeMap::new();
    for m in &model.members {
        *counts.entry(m.cluster).or_default().entry(class_of(&m.layout_id)).or_default() += 1;
    }
    let majority: usize = counts.values().map(|c| c.values().copied().max().unwrap_or(0)).sum();
    majority as f64 / model.members.len() as f64
}
