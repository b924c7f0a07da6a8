//! The three stages wired together over one corpus, as used by the CLI and
//! the HTTP service.

use crate::assets::{load_corpus, AssetError, AssetStore, ClusterId, ConnectionStyle};
use crate::color::Rgb;
use crate::compose::{self, rank_palettes, AssembledInfographic, ComposeError, PaletteChoice, Provenance, Selection};
use crate::content::{AssetResolver, ComponentSignature, ContentSpec};
use crate::geometry::Canvas;
use crate::index::{assign_cluster, build_indices, read_indices, CorpusIndices, IndexConfig, IndexError};
use crate::layout::{
    match_sketch, rank_layouts, score_layout, EnergyWeights, LayoutError, LayoutScore, PivotPlacement, RankOptions,
    Sketch, SketchMatches,
};
use crate::recommend::{
    rank_connection_styles, rank_vgs, sample_connection_designs, ConnectionStyleRanking, RecommendError, VgRanking,
};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Connection designs offered per style.
pub const DESIGNS_PER_STYLE: usize = 3;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Asset(#[from] AssetError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Recommend(#[from] RecommendError),
    #[error("unknown layout `{0}`")]
    UnknownLayout(String),
    #[error("cluster {0} does not exist in a model of {1} clusters")]
    UnknownCluster(ClusterId, usize),
    #[error("no VG design has slots for {0:?}")]
    NoMatchingVg(ComponentSignature),
    #[error("selection is missing {0}")]
    SelectionIncomplete(&'static str),
    #[error("none of the {0} candidate layouts could be placed on this canvas")]
    NothingPlaceable(usize),
}

impl EngineError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            EngineError::Asset(_) => "ASSET_ERROR",
            EngineError::Index(_) => "INDEX_ERROR",
            EngineError::Layout(e) => match e {
                LayoutError::NoCandidates(_) => "NO_CANDIDATES",
                LayoutError::Geometry(_) => "INVALID_GEOMETRY",
                LayoutError::InvalidAlpha(_) => "INVALID_ALPHA",
                LayoutError::InvalidRequest(_) => "INVALID_REQUEST",
            },
            EngineError::Compose(e) => e.code(),
            EngineError::Recommend(RecommendError::NoDesignsForStyle(_)) => "NO_DESIGNS_FOR_STYLE",
            EngineError::UnknownLayout(_) => "UNKNOWN_ASSET",
            EngineError::UnknownCluster(..) => "UNKNOWN_CLUSTER",
            EngineError::NoMatchingVg(_) => "NO_MATCHING_VG",
            EngineError::SelectionIncomplete(_) => "SELECTION_INCOMPLETE",
            EngineError::NothingPlaceable(_) => "UNPLACEABLE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    Energy,
    Sketch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutRecommendation {
    pub method: RankMethod,
    /// Energy scores in ranked order. For sketch queries these follow the
    /// sketch ranking.
    pub scores: Vec<LayoutScore>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sketch: Option<SketchMatches>,
}

impl LayoutRecommendation {
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.scores.iter().map(|s| s.layout_id.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutQuery<'a> {
    pub n_vgs: usize,
    pub canvas: &'a Canvas,
    pub pivot: Option<&'a PivotPlacement>,
    pub sketch: Option<&'a Sketch>,
    pub weights: EnergyWeights,
    pub top_k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleDesigns {
    pub style: ConnectionStyle,
    pub design_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionRecommendation {
    pub ranking: ConnectionStyleRanking,
    /// Sampled designs for each ranked style that has any.
    pub designs: Vec<StyleDesigns>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionChoice {
    pub style: ConnectionStyle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_id: Option<String>,
}

/// Per-stage choices made so far; anything unset is recommended.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Selections {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vg_design_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub palette_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationBundle {
    pub layouts: LayoutRecommendation,
    /// Layout the stage-2 panels were computed for.
    pub layout_id: String,
    pub cluster_id: ClusterId,
    pub vgs: VgRanking,
    pub connections: ConnectionRecommendation,
    pub palettes: Vec<PaletteChoice>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundleRequest<'a> {
    pub content: &'a ContentSpec,
    pub canvas: &'a Canvas,
    pub pivot: Option<&'a PivotPlacement>,
    pub sketch: Option<&'a Sketch>,
    pub weights: EnergyWeights,
    pub seed: u64,
    pub top_k: usize,
    pub selections: &'a Selections,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateRequest<'a> {
    pub content: &'a ContentSpec,
    pub canvas: &'a Canvas,
    pub pivot: Option<&'a PivotPlacement>,
    pub sketch: Option<&'a Sketch>,
    pub weights: EnergyWeights,
    pub seed: u64,
    pub top_k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedLayout {
    pub layout_id: String,
    pub code: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generation {
    pub layouts: LayoutRecommendation,
    pub outputs: Vec<AssembledInfographic>,
    /// Candidates passed over because composition failed on them.
    pub skipped: Vec<SkippedLayout>,
}

/// An immutable corpus with its indices.
#[derive(Debug)]
pub struct Engine {
    store: AssetStore,
    indices: CorpusIndices,
    indices_built: bool,
}

impl Engine {
    /// Loads a corpus, reading its index files or building them in memory
    /// with the default configuration when none exist.
    pub fn open(root: &Path) -> Result<Engine, EngineError> {
        let store = load_corpus(root)?;
        match read_indices(root)? {
            Some(indices) => Ok(Engine::new(store, indices)),
            None => {
                let indices = build_indices(&store, &IndexConfig::default())?;
                Ok(Engine {
                    store,
                    indices,
                    indices_built: true,
                })
            }
        }
    }

    pub fn new(store: AssetStore, indices: CorpusIndices) -> Engine {
        Engine {
            store,
            indices,
            indices_built: false,
        }
    }

    pub fn store(&self) -> &AssetStore {
        &self.store
    }

    pub fn indices(&self) -> &CorpusIndices {
        &self.indices
    }

    /// True when the indices were built at load time rather than read.
    pub fn indices_built(&self) -> bool {
        self.indices_built
    }

    pub fn cluster_of_layout(&self, layout_id: &str) -> Result<ClusterId, EngineError> {
        let layout = self
            .store
            .layout(layout_id)
            .ok_or_else(|| EngineError::UnknownLayout(layout_id.to_string()))?;
        Ok(assign_cluster(&self.indices.cluster_model, layout))
    }

    fn check_cluster(&self, cluster: ClusterId) -> Result<(), EngineError> {
        let k = self.indices.cluster_model.k();
        if (cluster as usize) < k {
            Ok(())
        } else {
            Err(EngineError::UnknownCluster(cluster, k))
        }
    }

    pub fn recommend_layouts(&self, q: &LayoutQuery<'_>) -> Result<LayoutRecommendation, EngineError> {
        let Some(sketch) = q.sketch else {
            let scores = rank_layouts(
                &self.store,
                q.canvas,
                q.pivot,
                q.n_vgs,
                q.weights,
                q.top_k,
                RankOptions::default(),
            )?;
            return Ok(LayoutRecommendation {
                method: RankMethod::Energy,
                scores,
                sketch: None,
            });
        };
        q.canvas.validate().map_err(LayoutError::from)?;
        let stroke = sketch.polyline(q.canvas)?;
        let matches = match_sketch(&self.store, &stroke, q.n_vgs, q.top_k, q.pivot)?;
        let scores = matches
            .ranked
            .iter()
            .map(|m| {
                let layout = self.store.layout(&m.layout_id).expect("matched layouts exist");
                score_layout(layout, q.canvas, q.pivot, q.weights)
            })
            .collect();
        Ok(LayoutRecommendation {
            method: RankMethod::Sketch,
            scores,
            sketch: Some(matches),
        })
    }

    pub fn recommend_vgs(&self, cluster: ClusterId, sig: ComponentSignature, top_k: usize) -> Result<VgRanking, EngineError> {
        self.check_cluster(cluster)?;
        Ok(rank_vgs(&self.indices.vg_vif, &self.store, cluster, sig, top_k))
    }

    pub fn recommend_connections(
        &self,
        cluster: ClusterId,
        has_pivot: bool,
        seed: u64,
        k: usize,
    ) -> Result<ConnectionRecommendation, EngineError> {
        self.check_cluster(cluster)?;
        let ranking = rank_connection_styles(&self.indices.c_vif, cluster, has_pivot);
        let designs = ranking
            .entries
            .iter()
            .filter(|e| e.style != ConnectionStyle::None)
            .filter_map(|e| {
                let picked = sample_connection_designs(&self.store, e.style, seed, k).ok()?;
                Some(StyleDesigns {
                    style: e.style,
                    design_ids: picked.into_iter().map(|d| d.id.clone()).collect(),
                })
            })
            .collect();
        Ok(ConnectionRecommendation { ranking, designs })
    }

    pub fn recommend_palettes(&self, background: Rgb) -> Vec<PaletteChoice> {
        rank_palettes(self.store.palettes(), background)
    }

    /// Every panel at once. Stage 2 follows the selected layout, or the top
    /// ranked one; stage 1 never depends on the selections.
    pub fn bundle(&self, req: &BundleRequest<'_>) -> Result<RecommendationBundle, EngineError> {
        let layouts = self.recommend_layouts(&LayoutQuery {
            n_vgs: req.content.len(),
            canvas: req.canvas,
            pivot: req.pivot,
            sketch: req.sketch,
            weights: req.weights,
            top_k: req.top_k,
        })?;
        let layout_id = match &req.selections.layout_id {
            Some(id) => id.clone(),
            None => layouts
                .ids()
                .next()
                .ok_or(LayoutError::NoCandidates(req.content.len()))?
                .to_string(),
        };
        let cluster_id = self.cluster_of_layout(&layout_id)?;
        let vgs = self.recommend_vgs(cluster_id, req.content.union_signature(), req.top_k)?;
        let connections = self.recommend_connections(cluster_id, req.pivot.is_some(), req.seed, DESIGNS_PER_STYLE)?;
        Ok(RecommendationBundle {
            layouts,
            layout_id,
            cluster_id,
            vgs,
            connections,
            palettes: self.recommend_palettes(req.canvas.background),
        })
    }

    /// Turns session selections into a full composition selection. Layout
    /// and VG design must be chosen; the connection style defaults to the
    /// best ranked one with designs available, the palette to the best
    /// contrasting one.
    pub fn complete_selection(&self, selections: &Selections, has_pivot: bool) -> Result<Selection, EngineError> {
        let layout_id = selections
            .layout_id
            .clone()
            .ok_or(EngineError::SelectionIncomplete("layout_id"))?;
        let vg_design_id = selections
            .vg_design_id
            .clone()
            .ok_or(EngineError::SelectionIncomplete("vg_design_id"))?;
        let (style, design) = match &selections.connection {
            Some(c) => (c.style, c.design_id.clone()),
            None => (self.default_style(&layout_id, has_pivot)?, None),
        };
        Ok(Selection {
            layout_id,
            vg_design_id,
            connection_style: Some(style),
            connection_design_id: design,
            palette_id: selections.palette_id.clone(),
        })
    }

    fn default_style(&self, layout_id: &str, has_pivot: bool) -> Result<ConnectionStyle, EngineError> {
        let cluster = self.cluster_of_layout(layout_id)?;
        let ranking = rank_connection_styles(&self.indices.c_vif, cluster, has_pivot);
        Ok(ranking
            .entries
            .iter()
            .map(|e| e.style)
            .find(|&s| s == ConnectionStyle::None || !self.store.connections_of_style(s).is_empty())
            .unwrap_or(ConnectionStyle::None))
    }

    /// Fully recommended selection for one layout.
    pub fn auto_selection(
        &self,
        layout_id: &str,
        content: &ContentSpec,
        has_pivot: bool,
    ) -> Result<Selection, EngineError> {
        let cluster = self.cluster_of_layout(layout_id)?;
        let sig = content.union_signature();
        let vgs = self.recommend_vgs(cluster, sig, 1)?;
        let vg = vgs.entries.first().ok_or(EngineError::NoMatchingVg(sig))?;
        Ok(Selection {
            layout_id: layout_id.to_string(),
            vg_design_id: vg.id.clone(),
            connection_style: Some(self.default_style(layout_id, has_pivot)?),
            connection_design_id: None,
            palette_id: None,
        })
    }

    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        &self,
        canvas: &Canvas,
        content: &ContentSpec,
        pivot: Option<&PivotPlacement>,
        selection: &Selection,
        weights: EnergyWeights,
        seed: u64,
        resolver: &dyn AssetResolver,
    ) -> Result<AssembledInfographic, EngineError> {
        Ok(compose::assemble(
            &self.store,
            canvas,
            content,
            pivot,
            selection,
            weights,
            seed,
            resolver,
        )?)
    }

    pub fn render(&self, provenance: &Provenance) -> Result<AssembledInfographic, EngineError> {
        Ok(compose::render(&self.store, provenance)?)
    }

    /// Assembles the top `top_k` layouts with recommended designs. Output
    /// `i` uses seed `seed + i`. Layouts that touch the pivot or cannot be
    /// placed are passed over in favour of the next candidate.
    pub fn generate(&self, req: &GenerateRequest<'_>, resolver: &dyn AssetResolver) -> Result<Generation, EngineError> {
        let layouts = self.recommend_layouts(&LayoutQuery {
            n_vgs: req.content.len(),
            canvas: req.canvas,
            pivot: req.pivot,
            sketch: req.sketch,
            weights: req.weights,
            top_k: usize::MAX,
        })?;
        let mut outputs = Vec::new();
        let mut skipped = Vec::new();
        for score in layouts.scores.iter().filter(|s| s.e_o == 1) {
            if outputs.len() == req.top_k {
                break;
            }
            let selection = self.auto_selection(&score.layout_id, req.content, req.pivot.is_some())?;
            let seed = req.seed.wrapping_add(outputs.len() as u64);
            match self.assemble(req.canvas, req.content, req.pivot, &selection, req.weights, seed, resolver) {
                Ok(out) => outputs.push(out),
                Err(EngineError::Compose(ComposeError::Unplaceable)) => skipped.push(SkippedLayout {
                    layout_id: score.layout_id.clone(),
                    code: "UNPLACEABLE".into(),
                }),
                Err(e) => return Err(e),
            }
        }
        if outputs.is_empty() {
            return Err(EngineError::NothingPlaceable(skipped.len()));
        }
        let mut layouts = layouts;
        layouts.scores.truncate(req.top_k.max(outputs.len() + skipped.len()));
        if let Some(m) = layouts.sketch.as_mut() {
            m.ranked.truncate(req.top_k.max(outputs.len() + skipped.len()));
        }
        Ok(Generation {
            layouts,
            outputs,
            skipped,
        })
    }
}
