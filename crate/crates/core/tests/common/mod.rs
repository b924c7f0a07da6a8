#![allow(dead_code)]

use infoforge::assets::{load_corpus, AssetStore};
use infoforge::content::{parse_markdown, ContentSpec};
use infoforge::layout::{PivotPlacement, Sketch};
use infoforge::pipeline::Engine;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

pub fn sample_pack() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/sample-pack")
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn store() -> &'static AssetStore {
    static STORE: OnceLock<AssetStore> = OnceLock::new();
    STORE.get_or_init(|| load_corpus(&sample_pack()).expect("sample pack loads"))
}

pub fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| Engine::open(&sample_pack()).expect("sample pack opens"))
}

pub fn content(name: &str) -> ContentSpec {
    parse_markdown(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn center_pivot() -> PivotPlacement {
    serde_json::from_str(&std::fs::read_to_string(fixture("pivot_center.json")).unwrap()).unwrap()
}

pub fn arch_sketch() -> Sketch {
    serde_json::from_str(&std::fs::read_to_string(fixture("sketch_arch.json")).unwrap()).unwrap()
}
