//! Set-membership TF-IDF over cluster ids.
//!
//! Items (VG designs or connection styles) are documents and cluster ids
//! are terms. `tf = 1/|set|` for member clusters, `idf = ln(N / df)`.

use super::IndexError;
use crate::assets::ClusterId;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfIndex {
    pub documents: BTreeMap<String, BTreeSet<ClusterId>>,
    pub scores: BTreeMap<String, BTreeMap<ClusterId, f64>>,
    pub doc_count: usize,
    pub df: BTreeMap<ClusterId, usize>,
}

pub fn build_tfidf_index(
    documents: BTreeMap<String, BTreeSet<ClusterId>>,
) -> Result<TfidfIndex, IndexError> {
    if documents.is_empty() {
        return Err(IndexError::EmptyDocuments);
    }
    if let Some((id, _)) = documents.iter().find(|(_, set)| set.is_empty()) {
        return Err(IndexError::InvalidInput(format!("document `{id}` has no clusters")));
    }
    let n = documents.len();
    let mut df: BTreeMap<ClusterId, usize> = BTreeMap::new();
    for set in documents.values() {
        for &c in set {
            *df.entry(c).or_default() += 1;
        }
    }
    let scores = documents
        .iter()
        .map(|(id, set)| {
            let tf = 1.0 / set.len() as f64;
            let row = set
                .iter()
                .map(|&c| (c, tf * (n as f64 / df[&c] as f64).ln()))
                .collect();
            (id.clone(), row)
        })
        .collect();
    Ok(TfidfIndex {
        documents,
        scores,
        doc_count: n,
        df,
    })
}

impl TfidfIndex {
    pub fn score(&self, item: &str, cluster: ClusterId) -> f64 {
        self.scores
            .get(item)
            .and_then(|r| r.get(&cluster))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn contains(&self, item: &str, cluster: ClusterId) -> bool {
        self.documents.get(item).is_some_and(|s| s.contains(&cluster))
    }

    /// Items whose document contains `cluster`, by (score desc, id asc).
    pub fn rank(&self, cluster: ClusterId) -> Vec<(String, f64)> {
        let mut out: Vec<(String, f64)> = self
            .scores
            .iter()
            .filter_map(|(id, row)| row.get(&cluster).map(|s| (id.clone(), *s)))
            .collect();
        out.sort_by(|a, b| crate::layout::by_score_then_id((a.1, &a.0), (b.1, &b.0)));
        out
    }
}
