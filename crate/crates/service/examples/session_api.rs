//! Drives the HTTP API in-process: create a session, add a pivot, pick a
//! layout and design, then assemble and re-render from provenance.
//!
//! ```text
//! cargo run -p infoforge-service --example session_api -- [out.svg]
//! ```

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use infoforge::pipeline::Engine;
use infoforge_service::cli::DEFAULT_CORPUS;
use infoforge_service::{router, AppState, MemoryStore, Sessions};
use serde_json::{json, Value};
use std::error::Error;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use tower::ServiceExt;

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> Result<(StatusCode, Vec<u8>), Box<dyn Error>> {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))?;
    let res = app.clone().oneshot(req).await?;
    let status = res.status();
    Ok((status, res.into_body().collect().await?.to_bytes().to_vec()))
}

fn top_ids(layouts: &Value, n: usize) -> Vec<String> {
    layouts["scores"]
        .as_array()
        .into_iter()
        .flatten()
        .take(n)
        .map(|s| format!("{} ({:.3})", s["layout_id"].as_str().unwrap_or("?"), s["e_l"].as_f64().unwrap_or(0.0)))
        .collect()
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures");
    let app = router(AppState {
        engine: Arc::new(Engine::open(Path::new(DEFAULT_CORPUS))?),
        sessions: Arc::new(Sessions::new(Arc::new(MemoryStore::default()))),
        media_root: fixtures.clone(),
    });

    let markdown = std::fs::read_to_string(fixtures.join("use_case_2.md"))?;
    let canvas = json!({"width_px": 1200, "height_px": 1600});
    let (status, body) = call(&app, Method::POST, "/sessions", Some(json!({"markdown": markdown, "canvas": canvas}))).await?;
    let created: Value = serde_json::from_slice(&body)?;
    let id = created["session"]["id"].as_str().ok_or("no session id")?.to_string();
    println!("{status} session {id}");
    println!("  layouts: {}", top_ids(&created["recommendations"]["layouts"], 4).join(", "));

    let pivot = json!({"bbox": {"x": 0.3, "y": 0.0, "w": 0.4, "h": 0.2}, "graphic_ref": "globe"});
    let (_, body) = call(&app, Method::PATCH, &format!("/sessions/{id}"), Some(json!({"pivot": pivot}))).await?;
    let bundle: Value = serde_json::from_slice(&body)?;
    println!("with pivot: {}", top_ids(&bundle["layouts"], 4).join(", "));

    let layout = bundle["layout_id"].as_str().ok_or("no layout")?.to_string();
    let vg = bundle["vgs"]["entries"][0]["id"].as_str().ok_or("no vg")?.to_string();
    let patch = json!({"selections": {"layout_id": layout, "vg_design_id": vg}});
    let (status, _) = call(&app, Method::PATCH, &format!("/sessions/{id}"), Some(patch)).await?;
    println!("{status} selected {layout} + {vg}");

    let req = Request::builder()
        .method(Method::POST)
        .uri(format!("/sessions/{id}/assemble"))
        .body(Body::empty())?;
    let res = app.clone().oneshot(req).await?;
    let header = res
        .headers()
        .get(infoforge_service::api::PROVENANCE_HEADER)
        .ok_or("no provenance header")?
        .to_str()?
        .to_string();
    let svg = res.into_body().collect().await?.to_bytes().to_vec();
    println!("assembled {} bytes, provenance header {} chars", svg.len(), header.len());

    use base64::Engine as _;
    let record = base64::engine::general_purpose::STANDARD.decode(header)?;
    let (_, again) = call(&app, Method::POST, "/assemble", Some(serde_json::from_slice(&record)?)).await?;
    println!("re-render from provenance identical: {}", again == svg);

    let out = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("infoforge-session.svg"), PathBuf::from);
    std::fs::write(&out, &svg)?;
    println!("wrote {}", out.display());
    Ok(())
}
