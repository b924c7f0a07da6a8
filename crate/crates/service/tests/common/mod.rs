#![allow(dead_code)]

use axum::body::Body;
use axum::http::{HeaderMap, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use infoforge::pipeline::Engine;
use infoforge_service::cli::DEFAULT_CORPUS;
use infoforge_service::{router, AppState, MemoryStore, SessionStore, Sessions};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};
use tower::ServiceExt;

pub fn corpus() -> PathBuf {
    PathBuf::from(DEFAULT_CORPUS)
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixtures().join(name)).unwrap()
}

pub fn fixture_json(name: &str) -> Value {
    serde_json::from_str(&fixture_text(name)).unwrap()
}

pub fn engine() -> Arc<Engine> {
    static ENGINE: OnceLock<Arc<Engine>> = OnceLock::new();
    ENGINE
        .get_or_init(|| Arc::new(Engine::open(&corpus()).expect("sample pack opens")))
        .clone()
}

pub fn app_with(store: Arc<dyn SessionStore>) -> Router {
    router(AppState {
        engine: engine(),
        sessions: Arc::new(Sessions::new(store)),
        media_root: fixtures(),
    })
}

pub fn app() -> Router {
    app_with(Arc::new(MemoryStore::default()))
}

pub struct Reply {
    pub status: StatusCode,
    pub headers: HeaderMap,
    pub body: Vec<u8>,
}

impl Reply {
    pub fn json(&self) -> Value {
        serde_json::from_slice(&self.body).unwrap_or_else(|e| panic!("{e}: {}", self.text()))
    }

    pub fn text(&self) -> String {
        String::from_utf8_lossy(&self.body).into_owned()
    }

    pub fn code(&self) -> String {
        self.json()["error"]["code"].as_str().unwrap_or_default().to_string()
    }
}

pub async fn send_raw(app: &Router, method: Method, uri: &str, body: Option<String>) -> Reply {
    let mut req = Request::builder().method(method).uri(uri);
    if body.is_some() {
        req = req.header("content-type", "application/json");
    }
    let req = req.body(body.map_or_else(Body::empty, Body::from)).unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let headers = res.headers().clone();
    let body = res.into_body().collect().await.unwrap().to_bytes().to_vec();
    Reply { status, headers, body }
}

pub async fn send(app: &Router, method: Method, uri: &str, body: Option<Value>) -> Reply {
    send_raw(app, method, uri, body.map(|b| b.to_string())).await
}

pub fn canvas() -> Value {
    serde_json::json!({"width_px": 1200, "height_px": 1600})
}

/// Creates a session and returns its id and the full 201 body.
pub async fn create(app: &Router, body: Value) -> (String, Value) {
    let r = send(app, Method::POST, "/sessions", Some(body)).await;
    assert_eq!(r.status, StatusCode::CREATED, "{}", r.text());
    let v = r.json();
    (v["session"]["id"].as_str().unwrap().to_string(), v)
}
