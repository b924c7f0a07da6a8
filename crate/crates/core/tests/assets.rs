mod common;

use common::{sample_pack, store};
use infoforge::assets::{load_corpus, write_manifest, AssetError};
use infoforge::content::ComponentSignature;
use std::fs;
use std::path::Path;

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

fn pack_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&sample_pack(), dir.path());
    dir
}

fn corrupt_file(err: AssetError) -> (String, String) {
    match err {
        AssetError::CorruptAsset { file, reason } => (file, reason),
        other => panic!("expected CorruptAsset, got {other:?}"),
    }
}

#[test]
fn sample_pack_meets_the_minimum_counts() {
    let s = store();
    assert!(s.layouts().len() >= 40);
    assert!(s.vgs().len() >= 25);
    assert!(s.connections().len() >= 12);
    assert!(!s.palettes().is_empty());
    assert_eq!(s.manifest.counts.layouts, s.layouts().len());
}

#[test]
fn empty_directory_has_no_manifest() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(load_corpus(dir.path()), Err(AssetError::MissingManifest(_))));
}

#[test]
fn edited_file_fails_its_checksum() {
    let dir = pack_copy();
    let f = dir.path().join("layouts/arch-5.json");
    let mut text = fs::read_to_string(&f).unwrap();
    text.push(' ');
    fs::write(&f, text).unwrap();
    let (file, reason) = corrupt_file(load_corpus(dir.path()).unwrap_err());
    assert_eq!(file, "layouts/arch-5.json");
    assert!(reason.contains("checksum"));
}

#[test]
fn missing_declared_placeholder_is_corrupt() {
    let dir = pack_copy();
    let f = dir.path().join("vgs/vg-04-card-tx.svg");
    let svg = fs::read_to_string(&f).unwrap();
    assert!(svg.contains(r#"id="ph-title""#));
    fs::write(&f, svg.replace(r#"id="ph-title""#, r#"id="heading""#)).unwrap();
    write_manifest(dir.path()).unwrap();
    let (file, reason) = corrupt_file(load_corpus(dir.path()).unwrap_err());
    assert_eq!(file, "vgs/vg-04-card-tx.svg");
    assert!(reason.contains("ph-title"), "{reason}");
}

#[test]
fn unknown_cluster_reference_is_corrupt() {
    let dir = pack_copy();
    let f = dir.path().join("vgs/vg-00-disc-l.meta.json");
    let mut meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(&f).unwrap()).unwrap();
    meta["clusters"] = serde_json::json!([0, 40]);
    fs::write(&f, serde_json::to_string_pretty(&meta).unwrap()).unwrap();
    write_manifest(dir.path()).unwrap();
    let (file, reason) = corrupt_file(load_corpus(dir.path()).unwrap_err());
    assert_eq!(file, "vg-00-disc-l");
    assert!(reason.contains("40"));
}

#[test]
fn future_format_version_is_refused() {
    let dir = pack_copy();
    let f = dir.path().join("manifest.json");
    let mut m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&f).unwrap()).unwrap();
    m["format_version"] = serde_json::json!(99);
    fs::write(&f, serde_json::to_string(&m).unwrap()).unwrap();
    assert!(matches!(
        load_corpus(dir.path()),
        Err(AssetError::VersionMismatch { found: 99, .. })
    ));
}

#[test]
fn count_filter() {
    let s = store();
    let four = s.layouts_with_count(4);
    assert!(!four.is_empty());
    assert!(four.iter().all(|l| l.len() == 4));
    assert!(four.windows(2).all(|w| w[0].id < w[1].id));
    assert!(s.layouts_with_count(100).is_empty());
    let five: Vec<&str> = s.layouts_with_count(5).iter().map(|l| l.id.as_str()).collect();
    assert!(five.contains(&"clock-5") && five.contains(&"arch-5"));
}

#[test]
fn signature_filter() {
    let s = store();
    let label = ComponentSignature {
        has_label: true,
        ..Default::default()
    };
    assert!(!s.vgs_matching(label).is_empty());
    let all = s.vgs_matching(ComponentSignature::ALL);
    assert!(!all.is_empty());
    assert!(all.iter().all(|v| v.placeholders() == ComponentSignature::ALL));
    let tx = ComponentSignature {
        has_title: true,
        has_text: true,
        ..Default::default()
    };
    for v in s.vgs() {
        assert_eq!(s.vgs_matching(tx).iter().any(|m| m.id == v.id), v.placeholders().covers(tx));
    }
}

#[test]
fn loading_is_deterministic() {
    let a = load_corpus(&sample_pack()).unwrap();
    let b = load_corpus(&sample_pack()).unwrap();
    let ids = |s: &infoforge::assets::AssetStore| -> Vec<String> {
        s.layouts()
            .iter()
            .map(|l| l.id.clone())
            .chain(s.vgs().iter().map(|v| v.id.clone()))
            .chain(s.connections().iter().map(|c| c.id.clone()))
            .collect()
    };
    assert_eq!(ids(&a), ids(&b));
    assert_eq!(a.layouts(), b.layouts());
    assert_eq!(a.vgs(), b.vgs());
}
