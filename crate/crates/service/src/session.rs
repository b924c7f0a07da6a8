//! Session records and the rules for creating and editing them.

use crate::error::ApiError;
use chrono::{DateTime, Utc};
use infoforge::assets::ConnectionStyle;
use infoforge::compose::AssembledInfographic;
use infoforge::content::{parse_markdown, AssetResolver, ContentSpec};
use infoforge::geometry::Canvas;
use infoforge::layout::{EnergyWeights, PivotPlacement, Sketch};
use infoforge::pipeline::{BundleRequest, ConnectionChoice, Engine, EngineError, RecommendationBundle, Selections};
use serde::{Deserialize, Deserializer, Serialize};

/// Layouts listed per panel unless the client asks otherwise.
pub const DEFAULT_TOP_K: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub id: String,
    pub markdown: String,
    pub content: ContentSpec,
    pub canvas: Canvas,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<PivotPlacement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sketch: Option<Sketch>,
    #[serde(default)]
    pub selections: Selections,
    pub alpha: f64,
    pub seed: u64,
    pub top_k: usize,
    /// Number of edits applied since creation.
    pub revision: u64,
    pub created_at: DateTime<Utc>,
    pub updated_at: DateTime<Utc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    pub markdown: String,
    pub canvas: Canvas,
    pub alpha: Option<f64>,
    pub seed: Option<u64>,
    pub top_k: Option<usize>,
    pub pivot: Option<PivotPlacement>,
    pub sketch: Option<Sketch>,
}

/// Present-but-null clears a field; absent leaves it alone.
fn nullable<'de, T: Deserialize<'de>, D: Deserializer<'de>>(d: D) -> Result<Option<Option<T>>, D::Error> {
    Option::<T>::deserialize(d).map(Some)
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionsPatch {
    #[serde(default, deserialize_with = "nullable", skip_serializing_if = "Option::is_none")]
    pub layout_id: Option<Option<String>>,
    #[serde(default, deserialize_with = "nullable", skip_serializing_if = "Option::is_none")]
    pub vg_design_id: Option<Option<String>>,
    #[serde(default, deserialize_with = "nullable", skip_serializing_if = "Option::is_none")]
    pub connection: Option<Option<ConnectionChoice>>,
    #[serde(default, deserialize_with = "nullable", skip_serializing_if = "Option::is_none")]
    pub palette_id: Option<Option<String>>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SessionPatch {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markdown: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canvas: Option<Canvas>,
    #[serde(default, deserialize_with = "nullable", skip_serializing_if = "Option::is_none")]
    pub pivot: Option<Option<PivotPlacement>>,
    #[serde(default, deserialize_with = "nullable", skip_serializing_if = "Option::is_none")]
    pub sketch: Option<Option<Sketch>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selections: Option<SelectionsPatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_k: Option<usize>,
}

pub fn weights(alpha: f64) -> Result<EnergyWeights, ApiError> {
    EnergyWeights::new(alpha).map_err(|e| ApiError::bad_request("INVALID_ALPHA", e.to_string()))
}

pub fn check_canvas(canvas: &Canvas) -> Result<(), ApiError> {
    canvas
        .validate()
        .map_err(|e| ApiError::bad_request("INVALID_CANVAS", e.to_string()))
}

pub fn check_pivot(pivot: &PivotPlacement) -> Result<(), ApiError> {
    pivot
        .bbox
        .validate()
        .map_err(|e| ApiError::bad_request("INVALID_PIVOT", e.to_string()))
}

pub fn check_sketch(sketch: &Sketch, canvas: &Canvas) -> Result<(), ApiError> {
    sketch
        .polyline(canvas)
        .map(drop)
        .map_err(|e| ApiError::bad_request("INVALID_SKETCH", e.to_string()))
}

fn check_top_k(k: usize) -> Result<(), ApiError> {
    if k == 0 {
        return Err(ApiError::bad_request("INVALID_TOP_K", "top_k must be at least 1"));
    }
    Ok(())
}

fn unknown(kind: &str, id: &str) -> ApiError {
    ApiError::unprocessable("UNKNOWN_ASSET", format!("unknown {kind} `{id}`"))
}

impl Session {
    pub fn create(req: CreateSession, engine: &Engine, now: DateTime<Utc>) -> Result<Session, ApiError> {
        let content = parse_markdown(&req.markdown)?;
        check_canvas(&req.canvas)?;
        let alpha = req.alpha.unwrap_or(EnergyWeights::default().alpha);
        weights(alpha)?;
        let top_k = req.top_k.unwrap_or(DEFAULT_TOP_K);
        check_top_k(top_k)?;
        if let Some(p) = &req.pivot {
            check_pivot(p)?;
        }
        if let Some(s) = &req.sketch {
            check_sketch(s, &req.canvas)?;
        }
        let session = Session {
            id: ulid::Ulid::new().to_string(),
            markdown: req.markdown,
            content,
            canvas: req.canvas,
            pivot: req.pivot,
            sketch: req.sketch,
            selections: Selections::default(),
            alpha,
            seed: req.seed.unwrap_or(0),
            top_k,
            revision: 0,
            created_at: now,
            updated_at: now,
        };
        session.check_selections(engine)?;
        Ok(session)
    }

    pub fn weights(&self) -> EnergyWeights {
        EnergyWeights { alpha: self.alpha }
    }

    /// Applies an edit. Upstream choices are kept; a downstream selection
    /// is dropped only when the edit makes it impossible (a layout with the
    /// wrong point count, a pivot connection without a pivot).
    pub fn apply(&mut self, patch: SessionPatch, engine: &Engine, now: DateTime<Utc>) -> Result<(), ApiError> {
        let mut next = self.clone();
        if let Some(md) = patch.markdown {
            next.content = parse_markdown(&md)?;
            next.markdown = md;
        }
        if let Some(c) = patch.canvas {
            check_canvas(&c)?;
            next.canvas = c;
        }
        if let Some(p) = patch.pivot {
            if let Some(p) = &p {
                check_pivot(p)?;
            }
            next.pivot = p;
        }
        if let Some(s) = patch.sketch {
            next.sketch = s;
        }
        if let Some(s) = &next.sketch {
            check_sketch(s, &next.canvas)?;
        }
        if let Some(a) = patch.alpha {
            weights(a)?;
            next.alpha = a;
        }
        if let Some(seed) = patch.seed {
            next.seed = seed;
        }
        if let Some(k) = patch.top_k {
            check_top_k(k)?;
            next.top_k = k;
        }

        let n = next.content.len();
        if let Some(id) = &next.selections.layout_id {
            if engine.store().layout(id).is_some_and(|l| l.len() != n) {
                next.selections.layout_id = None;
            }
        }
        if next.pivot.is_none() && next.connection_style() == Some(ConnectionStyle::Pivot) {
            next.selections.connection = None;
        }
        if let Some(sel) = patch.selections {
            let s = &mut next.selections;
            if let Some(v) = sel.layout_id {
                s.layout_id = v;
            }
            if let Some(v) = sel.vg_design_id {
                s.vg_design_id = v;
            }
            if let Some(v) = sel.connection {
                s.connection = v;
            }
            if let Some(v) = sel.palette_id {
                s.palette_id = v;
            }
        }
        next.check_selections(engine)?;

        next.revision = self.revision + 1;
        next.updated_at = now.max(self.updated_at);
        *self = next;
        Ok(())
    }

    fn connection_style(&self) -> Option<ConnectionStyle> {
        self.selections.connection.as_ref().map(|c| c.style)
    }

    /// Every selection must name an existing asset that fits the content.
    pub fn check_selections(&self, engine: &Engine) -> Result<(), ApiError> {
        let store = engine.store();
        let s = &self.selections;
        if let Some(id) = &s.layout_id {
            let layout = store.layout(id).ok_or_else(|| unknown("layout", id))?;
            if layout.len() != self.content.len() {
                return Err(ApiError::unprocessable(
                    "COUNT_MISMATCH",
                    format!("layout `{id}` has {} points for {} items", layout.len(), self.content.len()),
                ));
            }
        }
        if let Some(id) = &s.vg_design_id {
            let vg = store.vg(id).ok_or_else(|| unknown("VG design", id))?;
            let need = self.content.union_signature();
            if !vg.placeholders().covers(need) {
                return Err(ApiError::unprocessable(
                    "SIGNATURE_MISMATCH",
                    format!("VG design `{id}` lacks slots for {need:?}"),
                ));
            }
        }
        if let Some(c) = &s.connection {
            if c.style == ConnectionStyle::Pivot && self.pivot.is_none() {
                return Err(ApiError::unprocessable("PIVOT_REQUIRED", "the pivot connection style needs a pivot"));
            }
            if let Some(id) = &c.design_id {
                let design = store.connection(id).ok_or_else(|| unknown("connection design", id))?;
                if design.style_class != c.style {
                    return Err(ApiError::unprocessable(
                        "STYLE_MISMATCH",
                        format!("connection design `{id}` is {}, not {}", design.style_class, c.style),
                    ));
                }
            }
        }
        if let Some(id) = &s.palette_id {
            store.palette(id).ok_or_else(|| unknown("palette", id))?;
        }
        Ok(())
    }

    pub fn bundle(&self, engine: &Engine) -> Result<RecommendationBundle, EngineError> {
        engine.bundle(&BundleRequest {
            content: &self.content,
            canvas: &self.canvas,
            pivot: self.pivot.as_ref(),
            sketch: self.sketch.as_ref(),
            weights: self.weights(),
            seed: self.seed,
            top_k: self.top_k,
            selections: &self.selections,
        })
    }

    pub fn assemble(&self, engine: &Engine, resolver: &dyn AssetResolver) -> Result<AssembledInfographic, EngineError> {
        let selection = engine.complete_selection(&self.selections, self.pivot.is_some())?;
        engine.assemble(
            &self.canvas,
            &self.content,
            self.pivot.as_ref(),
            &selection,
            self.weights(),
            self.seed,
            resolver,
        )
    }
}
