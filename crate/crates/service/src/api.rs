//! HTTP routes. Engine work runs on the blocking pool; the engine and the
//! corpus are shared read-only, session edits go through [`Sessions`].

use crate::error::ApiError;
use crate::session::{weights, CreateSession, Session, SessionPatch, DEFAULT_TOP_K};
use crate::store::Sessions;
use axum::extract::{FromRequest, Path, Query, State};
use axum::http::{header, HeaderName, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use base64::Engine as _;
use infoforge::assets::ClusterId;
use infoforge::color::Rgb;
use infoforge::compose::{AssembledInfographic, Provenance};
use infoforge::content::{parse_markdown, validate_spec, ComponentSignature, FsResolver};
use infoforge::geometry::Canvas;
use infoforge::layout::{PivotPlacement, Sketch};
use infoforge::pipeline::{Engine, LayoutQuery, RecommendationBundle, DESIGNS_PER_STYLE};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;
use tower_http::services::ServeDir;
use tower_http::trace::TraceLayer;

pub const PROVENANCE_HEADER: &str = "x-infoforge-provenance";
pub const SVG_CONTENT_TYPE: &str = "image/svg+xml";

/// JSON body extractor whose rejections use the common error shape.
#[derive(FromRequest)]
#[from_request(via(axum::Json), rejection(ApiError))]
pub struct ApiJson<T>(pub T);

#[derive(Clone)]
pub struct AppState {
    pub engine: Arc<Engine>,
    pub sessions: Arc<Sessions>,
    /// Base directory for image references in session content.
    pub media_root: PathBuf,
}

impl AppState {
    fn resolver(&self) -> FsResolver {
        FsResolver {
            base: self.media_root.clone(),
        }
    }
}

pub fn router(state: AppState) -> Router {
    let assets = ServeDir::new(state.engine.store().root());
    Router::new()
        .route("/healthz", get(|| async { "ok" }))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session).patch(patch_session))
        .route("/sessions/{id}/recommendations", get(recommendations))
        .route("/sessions/{id}/assemble", post(assemble_session))
        .route("/assemble", post(assemble_provenance))
        .route("/recommend/layouts", post(recommend_layouts))
        .route("/recommend/vgs", post(recommend_vgs))
        .route("/recommend/connections", post(recommend_connections))
        .route("/recommend/palettes", post(recommend_palettes))
        .route("/content/parse", post(parse_content))
        .route("/catalog", get(catalog))
        .nest_service("/assets", assets)
        .layer(TraceLayer::new_for_http())
        .with_state(state)
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string()))?
}

#[derive(Serialize)]
struct SessionView {
    session: Session,
    recommendations: RecommendationBundle,
}

async fn create_session(
    State(st): State<AppState>,
    ApiJson(req): ApiJson<CreateSession>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let view = blocking(move || {
        let session = Session::create(req, &st.engine, chrono::Utc::now())?;
        let recommendations = session.bundle(&st.engine)?;
        st.sessions.create(&session)?;
        Ok(SessionView {
            session,
            recommendations,
        })
    })
    .await?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(State(st): State<AppState>, Path(id): Path<String>) -> Result<Json<Session>, ApiError> {
    Ok(Json(blocking(move || Ok(st.sessions.load(&id)?)).await?))
}

async fn patch_session(
    State(st): State<AppState>,
    Path(id): Path<String>,
    ApiJson(patch): ApiJson<SessionPatch>,
) -> Result<Json<RecommendationBundle>, ApiError> {
    let bundle = blocking(move || {
        st.sessions.update(&id, |s| {
            s.apply(patch, &st.engine, chrono::Utc::now())?;
            Ok::<_, ApiError>(s.bundle(&st.engine)?)
        })
    })
    .await?;
    Ok(Json(bundle))
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Stage {
    Layout,
    Vg,
    Connection,
    Palette,
}

#[derive(Deserialize)]
struct StageQuery {
    stage: Option<Stage>,
}

async fn recommendations(
    State(st): State<AppState>,
    Path(id): Path<String>,
    query: Result<Query<StageQuery>, axum::extract::rejection::QueryRejection>,
) -> Result<Json<Value>, ApiError> {
    let Query(q) = query.map_err(|e| ApiError::bad_request("MALFORMED_REQUEST", e.body_text()))?;
    let b = blocking(move || Ok(st.sessions.load(&id)?.bundle(&st.engine)?)).await?;
    let v = match q.stage {
        None => serde_json::to_value(&b),
        Some(Stage::Layout) => Ok(json!({"stage": "layout", "layouts": b.layouts})),
        Some(Stage::Vg) => Ok(json!({"stage": "vg", "layout_id": b.layout_id, "cluster_id": b.cluster_id, "vgs": b.vgs})),
        Some(Stage::Connection) => Ok(json!({
            "stage": "connection",
            "layout_id": b.layout_id,
            "cluster_id": b.cluster_id,
            "connections": b.connections,
        })),
        Some(Stage::Palette) => Ok(json!({"stage": "palette", "palettes": b.palettes})),
    };
    Ok(Json(v.expect("bundles serialize")))
}

/// SVG body with the provenance record, base64 JSON, in a header.
pub fn svg_response(out: &AssembledInfographic) -> Response {
    let record = serde_json::to_vec(&out.provenance).expect("provenance serializes");
    let encoded = base64::engine::general_purpose::STANDARD.encode(record);
    (
        [
            (header::CONTENT_TYPE, HeaderValue::from_static(SVG_CONTENT_TYPE)),
            (
                HeaderName::from_static(PROVENANCE_HEADER),
                HeaderValue::from_str(&encoded).expect("base64 is a valid header"),
            ),
        ],
        out.svg_doc.clone(),
    )
        .into_response()
}

async fn assemble_session(State(st): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let out = blocking(move || {
        let session = st.sessions.load(&id)?;
        Ok(session.assemble(&st.engine, &st.resolver())?)
    })
    .await?;
    Ok(svg_response(&out))
}

/// Re-renders a provenance record; the same path the CLI `render` uses.
async fn assemble_provenance(
    State(st): State<AppState>,
    ApiJson(prov): ApiJson<Provenance>,
) -> Result<Response, ApiError> {
    let out = blocking(move || Ok(st.engine.render(&prov)?)).await?;
    Ok(svg_response(&out))
}

fn item_count(n_vgs: Option<usize>, markdown: Option<&str>) -> Result<usize, ApiError> {
    match (n_vgs, markdown) {
        (Some(n), None) => Ok(n),
        (None, Some(md)) => Ok(parse_markdown(md)?.len()),
        _ => Err(ApiError::bad_request("MALFORMED_REQUEST", "give exactly one of `n_vgs` or `markdown`")),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutsRequest {
    n_vgs: Option<usize>,
    markdown: Option<String>,
    canvas: Canvas,
    pivot: Option<PivotPlacement>,
    sketch: Option<Sketch>,
    alpha: Option<f64>,
    top_k: Option<usize>,
}

async fn recommend_layouts(
    State(st): State<AppState>,
    ApiJson(r): ApiJson<LayoutsRequest>,
) -> Result<Json<Value>, ApiError> {
    let out = blocking(move || {
        let n = item_count(r.n_vgs, r.markdown.as_deref())?;
        crate::session::check_canvas(&r.canvas)?;
        if let Some(p) = &r.pivot {
            crate::session::check_pivot(p)?;
        }
        if let Some(s) = &r.sketch {
            crate::session::check_sketch(s, &r.canvas)?;
        }
        let rec = st.engine.recommend_layouts(&LayoutQuery {
            n_vgs: n,
            canvas: &r.canvas,
            pivot: r.pivot.as_ref(),
            sketch: r.sketch.as_ref(),
            weights: weights(r.alpha.unwrap_or(infoforge::layout::EnergyWeights::default().alpha))?,
            top_k: r.top_k.unwrap_or(DEFAULT_TOP_K),
        })?;
        Ok(serde_json::to_value(rec).expect("serializes"))
    })
    .await?;
    Ok(Json(out))
}

fn cluster_for(engine: &Engine, cluster_id: Option<ClusterId>, layout_id: Option<&str>) -> Result<ClusterId, ApiError> {
    match (cluster_id, layout_id) {
        (Some(c), None) => Ok(c),
        (None, Some(id)) => Ok(engine.cluster_of_layout(id)?),
        _ => Err(ApiError::bad_request(
            "MALFORMED_REQUEST",
            "give exactly one of `cluster_id` or `layout_id`",
        )),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VgsRequest {
    cluster_id: Option<ClusterId>,
    layout_id: Option<String>,
    signature: Option<ComponentSignature>,
    markdown: Option<String>,
    top_k: Option<usize>,
}

async fn recommend_vgs(State(st): State<AppState>, ApiJson(r): ApiJson<VgsRequest>) -> Result<Json<Value>, ApiError> {
    let out = blocking(move || {
        let cluster = cluster_for(&st.engine, r.cluster_id, r.layout_id.as_deref())?;
        let sig = match (r.signature, r.markdown.as_deref()) {
            (Some(s), None) => s,
            (None, Some(md)) => parse_markdown(md)?.union_signature(),
            _ => {
                return Err(ApiError::bad_request(
                    "MALFORMED_REQUEST",
                    "give exactly one of `signature` or `markdown`",
                ))
            }
        };
        let rec = st.engine.recommend_vgs(cluster, sig, r.top_k.unwrap_or(DEFAULT_TOP_K))?;
        Ok(serde_json::to_value(rec).expect("serializes"))
    })
    .await?;
    Ok(Json(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectionsRequest {
    cluster_id: Option<ClusterId>,
    layout_id: Option<String>,
    #[serde(default)]
    has_pivot: bool,
    seed: Option<u64>,
    k: Option<usize>,
}

async fn recommend_connections(
    State(st): State<AppState>,
    ApiJson(r): ApiJson<ConnectionsRequest>,
) -> Result<Json<Value>, ApiError> {
    let out = blocking(move || {
        let cluster = cluster_for(&st.engine, r.cluster_id, r.layout_id.as_deref())?;
        let rec = st.engine.recommend_connections(
            cluster,
            r.has_pivot,
            r.seed.unwrap_or(0),
            r.k.unwrap_or(DESIGNS_PER_STYLE),
        )?;
        Ok(serde_json::to_value(rec).expect("serializes"))
    })
    .await?;
    Ok(Json(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PalettesRequest {
    background: Rgb,
}

async fn recommend_palettes(
    State(st): State<AppState>,
    ApiJson(r): ApiJson<PalettesRequest>,
) -> Result<Json<Value>, ApiError> {
    Ok(Json(json!(st.engine.recommend_palettes(r.background))))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParseRequest {
    markdown: String,
}

/// Live feedback for an editor: the parsed spec plus non-fatal issues.
async fn parse_content(State(st): State<AppState>, ApiJson(r): ApiJson<ParseRequest>) -> Result<Json<Value>, ApiError> {
    let spec = parse_markdown(&r.markdown)?;
    let issues = validate_spec(&spec, &st.resolver());
    Ok(Json(json!({"content": spec, "issues": issues})))
}

async fn catalog(State(st): State<AppState>) -> Json<Value> {
    let engine = &st.engine;
    let store = engine.store();
    let layouts: Vec<Value> = store
        .layouts()
        .iter()
        .map(|l| json!({"id": l.id, "points": l.points, "cluster_id": engine.cluster_of_layout(&l.id).ok()}))
        .collect();
    let vgs: Vec<Value> = store
        .vgs()
        .iter()
        .map(|v| {
            json!({
                "id": v.id,
                "placeholders": v.placeholders(),
                "clusters": v.clusters,
                "native_size": [v.native_size.0, v.native_size.1],
                "href": format!("/assets/vgs/{}.svg", v.id),
            })
        })
        .collect();
    let connections: Vec<Value> = store
        .connections()
        .iter()
        .map(|c| json!({"id": c.id, "style": c.style_class, "href": format!("/assets/connections/{}.svg", c.id)}))
        .collect();
    let pivots: Vec<Value> = store
        .pivots()
        .iter()
        .map(|p| json!({"id": p.id, "href": format!("/assets/pivots/{}.svg", p.id)}))
        .collect();
    Json(json!({
        "layouts": layouts,
        "vgs": vgs,
        "connections": connections,
        "palettes": store.palettes(),
        "pivots": pivots,
    }))
}
