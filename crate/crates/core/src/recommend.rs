//! Stage 2: VG designs and connection styles for a chosen layout cluster.

use crate::assets::{AssetStore, ClusterId, ConnectionDesign, ConnectionStyle};
use crate::content::ComponentSignature;
use crate::index::TfidfIndex;
use crate::layout::by_score_then_id;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecommendError {
    #[error("no connection designs of style {0}")]
    NoDesignsForStyle(ConnectionStyle),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedItem {
    pub id: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VgRanking {
    pub cluster_id: ClusterId,
    pub signature: ComponentSignature,
    pub entries: Vec<RankedItem>,
    /// No design both fits the signature and appears in the cluster; the
    /// entries are signature matches with score 0.
    pub relaxed: bool,
}

pub fn rank_vgs(
    index: &TfidfIndex,
    store: &AssetStore,
    cluster_id: ClusterId,
    sig: ComponentSignature,
    top_k: usize,
) -> VgRanking {
    let fitting = store.vgs_matching(sig);
    let mut entries: Vec<RankedItem> = fitting
        .iter()
        .filter(|d| index.contains(&d.id, cluster_id))
        .map(|d| RankedItem {
            id: d.id.clone(),
            score: index.score(&d.id, cluster_id),
        })
        .collect();
    let relaxed = entries.is_empty();
    if relaxed {
        entries = fitting
            .iter()
            .map(|d| RankedItem {
                id: d.id.clone(),
                score: 0.0,
            })
            .collect();
    }
    entries.sort_by(|a, b| by_score_then_id((a.score, &a.id), (b.score, &b.id)));
    entries.truncate(top_k);
    VgRanking {
        cluster_id,
        signature: sig,
        entries,
        relaxed,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleScore {
    pub style: ConnectionStyle,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionStyleRanking {
    pub cluster_id: ClusterId,
    pub entries: Vec<StyleScore>,
}

impl ConnectionStyleRanking {
    pub fn top(&self) -> ConnectionStyle {
        self.entries[0].style
    }
}

/// Scores every admissible style for the cluster. Pivot is admissible only
/// when a pivot is placed.
pub fn rank_connection_styles(index: &TfidfIndex, cluster_id: ClusterId, has_pivot: bool) -> ConnectionStyleRanking {
    let mut entries: Vec<StyleScore> = ConnectionStyle::ALL
        .into_iter()
        .filter(|s| has_pivot || *s != ConnectionStyle::Pivot)
        .map(|style| StyleScore {
            style,
            score: index.score(style.as_str(), cluster_id),
        })
        .collect();
    entries.sort_by(|a, b| by_score_then_id((a.score, a.style.as_str()), (b.score, b.style.as_str())));
    ConnectionStyleRanking { cluster_id, entries }
}

/// Up to `k` designs of `style`, drawn without replacement.
pub fn sample_connection_designs(
    store: &AssetStore,
    style: ConnectionStyle,
    seed: u64,
    k: usize,
) -> Result<Vec<&ConnectionDesign>, RecommendError> {
    let pool = store.connections_of_style(style);
    if pool.is_empty() {
        return Err(RecommendError::NoDesignsForStyle(style));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, pool.len(), k.min(pool.len()));
    Ok(picks.into_iter().map(|i| pool[i]).collect())
}
