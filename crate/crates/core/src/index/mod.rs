//! Offline indices over the asset corpus.
//!
//! Layouts are rasterized, projected by PCA, embedded in the plane and
//! clustered into VIF classes. Two TF-IDF tables then map clusters to VG
//! designs and to connection styles.

mod cluster;
mod embed;
mod pca;
mod raster;
mod tfidf;

pub use cluster::{cluster_planar, dbscan, elbow_eps, ClusterDiagnostics, Clustering, Planar, DEFAULT_MIN_PTS};
pub use embed::{embed_2d, TsneParams};
pub use pca::{fit_pca, PcaModel, DEFAULT_COMPONENTS};
pub use raster::{rasterize_points, rasterize_vif, Raster, RASTER_SIDE};
pub use tfidf::{build_tfidf_index, TfidfIndex};

use crate::assets::{AssetStore, ClusterId, VifLayout, DEFAULT_CLUSTER_COUNT};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const CLUSTER_MODEL_FILE: &str = "cluster_model.json";
pub const VG_VIF_INDEX_FILE: &str = "vg_vif_index.json";
pub const C_VIF_INDEX_FILE: &str = "c_vif_index.json";
pub const INDEX_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("no documents to index")]
    EmptyDocuments,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("corrupt index file {file}: {reason}")]
    Corrupt { file: String, reason: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexConfig {
    pub k: usize,
    pub seed: u64,
    pub min_pts: usize,
    pub pca_components: usize,
    pub tsne: TsneParams,
}

impl Default for IndexConfig {
    fn default() -> Self {
        IndexConfig {
            k: DEFAULT_CLUSTER_COUNT as usize,
            seed: 42,
            min_pts: DEFAULT_MIN_PTS,
            pca_components: DEFAULT_COMPONENTS,
            tsne: TsneParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterMember {
    pub layout_id: String,
    pub cluster: ClusterId,
    pub pca: Vec<f32>,
    pub planar: Planar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterModel {
    pub format_version: u32,
    pub config: IndexConfig,
    /// Planar center of each cluster, indexed by cluster id.
    pub centers: Vec<Planar>,
    /// Sorted by layout id.
    pub members: Vec<ClusterMember>,
    pub pca: PcaModel,
    pub diagnostics: ClusterDiagnostics,
}

impl ClusterModel {
    pub fn k(&self) -> usize {
        self.centers.len()
    }

    pub fn cluster_of(&self, layout_id: &str) -> Option<ClusterId> {
        self.members
            .binary_search_by(|m| m.layout_id.as_str().cmp(layout_id))
            .ok()
            .map(|i| self.members[i].cluster)
    }

    pub fn assignments(&self) -> BTreeMap<&str, ClusterId> {
        self.members.iter().map(|m| (m.layout_id.as_str(), m.cluster)).collect()
    }

    pub fn project(&self, layout: &VifLayout) -> Vec<f64> {
        self.pca.project(&rasterize_vif(layout).to_vector())
    }
}

fn to_f32(v: &[f64]) -> Vec<f32> {
    v.iter().map(|x| *x as f32).collect()
}

fn pca_distance2(a: &[f64], b: &[f32]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - f64::from(*y)).powi(2)).sum()
}

/// Cluster of a layout: the stored assignment for a known corpus layout,
/// otherwise the cluster of its nearest corpus neighbour in PCA space.
pub fn assign_cluster(model: &ClusterModel, layout: &VifLayout) -> ClusterId {
    let v = model.project(layout);
    if let Ok(i) = model.members.binary_search_by(|m| m.layout_id.as_str().cmp(&layout.id)) {
        let m = &model.members[i];
        if pca_distance2(&v, &m.pca) < 1e-6 {
            return m.cluster;
        }
    }
    let mut best = (0, f64::INFINITY);
    for (i, m) in model.members.iter().enumerate() {
        let d = pca_distance2(&v, &m.pca);
        if d < best.1 {
            best = (i, d);
        }
    }
    model.members[best.0].cluster
}

/// Fits the full raster -> PCA -> plane -> cluster chain over `layouts`.
pub fn build_cluster_model(layouts: &[VifLayout], config: &IndexConfig) -> Result<ClusterModel, IndexError> {
    if config.k == 0 {
        return Err(IndexError::InvalidInput("k must be >= 1".into()));
    }
    if layouts.len() < config.k {
        return Err(IndexError::TooFewSamples {
            needed: config.k,
            got: layouts.len(),
        });
    }
    let mut layouts: Vec<&VifLayout> = layouts.iter().collect();
    layouts.sort_by(|a, b| a.id.cmp(&b.id));

    let rasters: Vec<Vec<f64>> = layouts.iter().map(|l| rasterize_vif(l).to_vector()).collect();
    let pca = fit_pca(&rasters, config.pca_components)?;
    let projected: Vec<Vec<f32>> = rasters.iter().map(|r| to_f32(&pca.project(r))).collect();
    let widened: Vec<Vec<f64>> = projected
        .iter()
        .map(|v| v.iter().map(|x| f64::from(*x)).collect())
        .collect();
    let planar = embed_2d(&widened, &config.tsne, config.seed);
    let clustering = cluster_planar(&planar, config.k, config.min_pts, config.seed);

    let hand: Vec<Option<ClusterId>> = layouts.iter().map(|l| l.cluster_id).collect();
    let relabel = align_labels(&clustering.labels, &hand, config.k);
    let mut centers = vec![[0.0; 2]; config.k];
    for (c, &id) in relabel.iter().enumerate() {
        centers[id as usize] = clustering.centers[c];
    }

    let members = layouts
        .iter()
        .zip(projected)
        .zip(&planar)
        .zip(&clustering.labels)
        .map(|(((l, pca), p), &c)| ClusterMember {
            layout_id: l.id.clone(),
            cluster: relabel[c],
            pca,
            planar: *p,
        })
        .collect();

    Ok(ClusterModel {
        format_version: INDEX_FORMAT_VERSION,
        config: config.clone(),
        centers,
        members,
        pca,
        diagnostics: clustering.diagnostics,
    })
}

/// Maps computed cluster numbers onto the corpus's hand-assigned class ids
/// by greedy majority vote, so asset metadata that names classes stays
/// meaningful. Unmatched clusters take the smallest free ids.
fn align_labels(labels: &[usize], hand: &[Option<ClusterId>], k: usize) -> Vec<ClusterId> {
    let mut votes: BTreeMap<(usize, ClusterId), usize> = BTreeMap::new();
    for (&c, h) in labels.iter().zip(hand) {
        if let Some(h) = *h {
            if (h as usize) < k {
                *votes.entry((c, h)).or_default() += 1;
            }
        }
    }
    let mut pairs: Vec<((usize, ClusterId), usize)> = votes.into_iter().collect();
    pairs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut map: Vec<Option<ClusterId>> = vec![None; k];
    let mut taken = vec![false; k];
    for ((c, h), _) in pairs {
        if map[c].is_none() && !taken[h as usize] {
            map[c] = Some(h);
            taken[h as usize] = true;
        }
    }
    let mut free = (0..k as ClusterId).filter(|&id| !taken[id as usize]);
    map.into_iter()
        .map(|m| m.unwrap_or_else(|| free.next().expect("k ids for k clusters")))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusIndices {
    pub cluster_model: ClusterModel,
    pub vg_vif: TfidfIndex,
    pub c_vif: TfidfIndex,
}

pub fn vg_documents(store: &AssetStore) -> BTreeMap<String, BTreeSet<ClusterId>> {
    store
        .vgs()
        .iter()
        .map(|v| (v.id.clone(), v.clusters.iter().copied().collect()))
        .collect()
}

pub fn connection_documents(store: &AssetStore) -> BTreeMap<String, BTreeSet<ClusterId>> {
    store
        .connection_table()
        .iter()
        .map(|(style, cs)| (style.as_str().to_string(), cs.iter().copied().collect()))
        .collect()
}

pub fn build_indices(store: &AssetStore, config: &IndexConfig) -> Result<CorpusIndices, IndexError> {
    Ok(CorpusIndices {
        cluster_model: build_cluster_model(store.layouts(), config)?,
        vg_vif: build_tfidf_index(vg_documents(store))?,
        c_vif: build_tfidf_index(connection_documents(store))?,
    })
}

fn write_json<T: Serialize>(root: &Path, name: &str, value: &T) -> Result<(), IndexError> {
    let mut bytes = serde_json::to_vec(value).expect("index serializes");
    bytes.push(b'\n');
    let path = root.join(name);
    fs::write(&path, bytes).map_err(|source| IndexError::Io { path, source })
}

fn read_json<T: serde::de::DeserializeOwned>(root: &Path, name: &str) -> Result<T, IndexError> {
    let path = root.join(name);
    let bytes = fs::read(&path).map_err(|source| IndexError::Io { path, source })?;
    serde_json::from_slice(&bytes).map_err(|e| IndexError::Corrupt {
        file: name.to_string(),
        reason: e.to_string(),
    })
}

pub fn write_indices(root: &Path, indices: &CorpusIndices) -> Result<(), IndexError> {
    write_json(root, CLUSTER_MODEL_FILE, &indices.cluster_model)?;
    write_json(root, VG_VIF_INDEX_FILE, &indices.vg_vif)?;
    write_json(root, C_VIF_INDEX_FILE, &indices.c_vif)
}

/// Reads all three index files; `Ok(None)` when none of them exist.
pub fn read_indices(root: &Path) -> Result<Option<CorpusIndices>, IndexError> {
    let names = [CLUSTER_MODEL_FILE, VG_VIF_INDEX_FILE, C_VIF_INDEX_FILE];
    let present = names.iter().filter(|n| root.join(n).is_file()).count();
    if present == 0 {
        return Ok(None);
    }
    let cluster_model: ClusterModel = read_json(root, CLUSTER_MODEL_FILE)?;
    if cluster_model.format_version != INDEX_FORMAT_VERSION {
        return Err(IndexError::Corrupt {
            file: CLUSTER_MODEL_FILE.into(),
            reason: format!("format version {}", cluster_model.format_version),
        });
    }
    Ok(Some(CorpusIndices {
        cluster_model,
        vg_vif: read_json(root, VG_VIF_INDEX_FILE)?,
        c_vif: read_json(root, C_VIF_INDEX_FILE)?,
    }))
}
