//! The design-asset corpus: VIF layouts, VG designs, connection designs,
//! pivot graphics and palettes.
//!
//! On-disk layout of a corpus root:
//!
//! ```text
//! manifest.json            format version, per-kind counts, sha256 per file
//! layouts/<id>.json        {"id", "points": [[x, y], ...], "cluster", "source"}
//! vgs/<id>.svg             VG design with `ph-title|ph-text|ph-label|ph-image` slots
//! vgs/<id>.meta.json       {"id", "native_size", "anchor"?, "slots", "clusters"}
//! connections/<id>.svg     connection design
//! connections/<id>.meta.json {"id", "style", "native_size", "length_axis"}
//! pivots/<id>.svg          optional pivot graphics
//! palettes.json            [{"id", "background", "series", "text_color"}]
//! c_vif_table.json         connection style -> VIF cluster ids
//! ```
//!
//! VG designs face "up" in their local frame: the composer rotates the
//! local `(0, -1)` direction toward the pivot.

use crate::color::Rgb;
use crate::content::ComponentSignature;
use crate::geometry::Point;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;
/// Number of VIF classes.
pub const DEFAULT_CLUSTER_COUNT: u32 = 12;

pub type ClusterId = u32;

#[derive(Debug, Error)]
pub enum AssetError {
    #[error("no manifest.json under {0}")]
    MissingManifest(PathBuf),
    #[error("corrupt asset {file}: {reason}")]
    CorruptAsset { file: String, reason: String },
    #[error("corpus format version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn corrupt(file: impl Into<String>, reason: impl fmt::Display) -> AssetError {
    AssetError::CorruptAsset {
        file: file.into(),
        reason: reason.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VifLayout {
    pub id: String,
    pub points: Vec<Point>,
    #[serde(default, rename = "cluster", skip_serializing_if = "Option::is_none")]
    pub cluster_id: Option<ClusterId>,
    #[serde(default)]
    pub source: String,
}

impl VifLayout {
    pub fn new(id: impl Into<String>, points: Vec<Point>) -> Self {
        VifLayout {
            id: id.into(),
            points,
            cluster_id: None,
            source: String::new(),
        }
    }

    pub fn with_cluster(mut self, cluster: ClusterId) -> Self {
        self.cluster_id = Some(cluster);
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.id.is_empty() {
            return Err("empty id".into());
        }
        if self.points.len() < 2 {
            return Err(format!("needs at least 2 points, has {}", self.points.len()));
        }
        if let Some(p) = self.points.iter().find(|p| !p.is_normalized()) {
            return Err(format!("point {p:?} outside the unit square"));
        }
        if let Some(c) = self.cluster_id {
            if c >= DEFAULT_CLUSTER_COUNT {
                return Err(format!("cluster {c} out of range"));
            }
        }
        Ok(())
    }
}

/// Rectangle in a design's local units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlotRect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl SlotRect {
    pub fn center(&self) -> Point {
        Point::new(self.x + self.w / 2.0, self.y + self.h / 2.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Slots {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<SlotRect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<SlotRect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<SlotRect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<SlotRect>,
}

impl Slots {
    pub fn signature(&self) -> ComponentSignature {
        ComponentSignature {
            has_title: self.title.is_some(),
            has_text: self.text.is_some(),
            has_label: self.label.is_some(),
            has_image: self.image.is_some(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, SlotRect)> + '_ {
        [
            ("title", self.title),
            ("text", self.text),
            ("label", self.label),
            ("image", self.image),
        ]
        .into_iter()
        .filter_map(|(k, r)| r.map(|r| (k, r)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VgDesignMeta {
    pub id: String,
    pub native_size: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Point>,
    pub slots: Slots,
    pub clusters: Vec<ClusterId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VgDesign {
    pub id: String,
    pub svg_doc: String,
    pub slots: Slots,
    /// Connection attachment point in local units; bottom-center by default.
    pub anchor: Point,
    pub native_size: (f64, f64),
    pub clusters: Vec<ClusterId>,
}

impl VgDesign {
    pub fn from_parts(meta: VgDesignMeta, svg_doc: String) -> Result<Self, String> {
        let [w, h] = meta.native_size;
        if !(w > 0.0 && h > 0.0) {
            return Err("native_size must be positive".into());
        }
        if meta.clusters.is_empty() {
            return Err("clusters must be non-empty".into());
        }
        if meta.slots.signature().is_empty() {
            return Err("design declares no placeholder slots".into());
        }
        let ids = svg_ids(&svg_doc)?;
        for (slot, _) in meta.slots.iter() {
            if !ids.contains(&format!("ph-{slot}")) {
                return Err(format!("declared slot `{slot}` has no `ph-{slot}` element"));
            }
        }
        if let Some(extra) = ids
            .iter()
            .filter(|id| id.starts_with("ph-"))
            .find(|id| !meta.slots.iter().any(|(s, _)| **id == format!("ph-{s}")))
        {
            return Err(format!("placeholder `{extra}` is not declared in metadata"));
        }
        let anchor = meta.anchor.unwrap_or(Point::new(w / 2.0, h));
        let mut clusters = meta.clusters;
        clusters.sort_unstable();
        clusters.dedup();
        Ok(VgDesign {
            id: meta.id,
            svg_doc,
            slots: meta.slots,
            anchor,
            native_size: (w, h),
            clusters,
        })
    }

    pub fn placeholders(&self) -> ComponentSignature {
        self.slots.signature()
    }
}

/// Parses `svg` and returns every `id` attribute value.
fn svg_ids(svg: &str) -> Result<BTreeSet<String>, String> {
    let doc = roxmltree::Document::parse(svg).map_err(|e| format!("malformed SVG: {e}"))?;
    if doc.root_element().tag_name().name() != "svg" {
        return Err("root element is not <svg>".into());
    }
    Ok(doc
        .descendants()
        .filter_map(|n| n.attribute("id").map(String::from))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionStyle {
    FlowShape,
    Regular,
    Alternate,
    Pivot,
    None,
}

impl ConnectionStyle {
    pub const ALL: [ConnectionStyle; 5] = [
        ConnectionStyle::FlowShape,
        ConnectionStyle::Regular,
        ConnectionStyle::Alternate,
        ConnectionStyle::Pivot,
        ConnectionStyle::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConnectionStyle::FlowShape => "flow_shape",
            ConnectionStyle::Regular => "regular",
            ConnectionStyle::Alternate => "alternate",
            ConnectionStyle::Pivot => "pivot",
            ConnectionStyle::None => "none",
        }
    }
}

impl fmt::Display for ConnectionStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ConnectionStyle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConnectionStyle::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown connection style `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionDesignMeta {
    pub id: String,
    pub style: ConnectionStyle,
    pub native_size: [f64; 2],
    #[serde(default = "default_axis")]
    pub length_axis: Axis,
}

fn default_axis() -> Axis {
    Axis::X
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionDesign {
    pub id: String,
    pub svg_doc: String,
    pub style_class: ConnectionStyle,
    pub native_size: (f64, f64),
    pub native_length_axis: Axis,
}

impl ConnectionDesign {
    pub fn from_parts(meta: ConnectionDesignMeta, svg_doc: String) -> Result<Self, String> {
        if meta.style == ConnectionStyle::None {
            return Err("a connection design cannot have style `none`".into());
        }
        let [w, h] = meta.native_size;
        if !(w > 0.0 && h > 0.0) {
            return Err("native_size must be positive".into());
        }
        svg_ids(&svg_doc)?;
        Ok(ConnectionDesign {
            id: meta.id,
            svg_doc,
            style_class: meta.style,
            native_size: (w, h),
            native_length_axis: meta.length_axis,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    pub id: String,
    pub background: Rgb,
    pub series: Vec<Rgb>,
    pub text_color: Rgb,
}

impl Palette {
    pub const MIN_SERIES: usize = 6;
}

#[derive(Debug, Clone, PartialEq)]
pub struct PivotAsset {
    pub id: String,
    pub svg_doc: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssetCounts {
    pub layouts: usize,
    pub vgs: usize,
    pub connections: usize,
    pub palettes: usize,
    #[serde(default)]
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssetManifest {
    pub format_version: u32,
    pub counts: AssetCounts,
    /// Relative path -> lowercase hex sha256.
    pub checksums: BTreeMap<String, String>,
    #[serde(skip)]
    pub root: PathBuf,
}

/// Hand-authored connection-style documents: style -> clusters it was seen in.
pub type ConnectionTable = BTreeMap<ConnectionStyle, Vec<ClusterId>>;

/// Immutable, validated corpus. Reloading builds a new instance.
#[derive(Debug, Clone)]
pub struct AssetStore {
    pub manifest: AssetManifest,
    layouts: Vec<VifLayout>,
    vgs: Vec<VgDesign>,
    connections: Vec<ConnectionDesign>,
    palettes: Vec<Palette>,
    pivots: Vec<PivotAsset>,
    connection_table: ConnectionTable,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(root: &Path, rel: &str) -> Result<Vec<u8>, AssetError> {
    let path = root.join(rel);
    fs::read(&path).map_err(|source| AssetError::Io { path, source })
}

fn read_string(root: &Path, rel: &str) -> Result<String, AssetError> {
    String::from_utf8(read(root, rel)?).map_err(|_| corrupt(rel, "not UTF-8"))
}

/// Files under `root/dir` with the given suffix, as sorted relative paths.
fn list(root: &Path, dir: &str, suffix: &str) -> Result<Vec<String>, AssetError> {
    let path = root.join(dir);
    if !path.is_dir() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for entry in fs::read_dir(&path).map_err(|source| AssetError::Io {
        path: path.clone(),
        source,
    })? {
        let entry = entry.map_err(|source| AssetError::Io {
            path: path.clone(),
            source,
        })?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.ends_with(suffix) {
            out.push(format!("{dir}/{name}"));
        }
    }
    out.sort();
    Ok(out)
}

/// Every file the manifest must cover.
fn asset_files(root: &Path) -> Result<Vec<String>, AssetError> {
    let mut files = Vec::new();
    files.extend(list(root, "layouts", ".json")?);
    files.extend(list(root, "vgs", ".svg")?);
    files.extend(list(root, "vgs", ".meta.json")?);
    files.extend(list(root, "connections", ".svg")?);
    files.extend(list(root, "connections", ".meta.json")?);
    files.extend(list(root, "pivots", ".svg")?);
    for f in ["palettes.json", "c_vif_table.json"] {
        if root.join(f).is_file() {
            files.push(f.to_string());
        }
    }
    files.sort();
    Ok(files)
}

fn parse_json<T: serde::de::DeserializeOwned>(root: &Path, rel: &str) -> Result<T, AssetError> {
    let bytes = read(root, rel)?;
    serde_json::from_slice(&bytes).map_err(|e| corrupt(rel, e))
}

fn stem<'a>(rel: &'a str, suffix: &str) -> &'a str {
    let name = rel.rsplit('/').next().unwrap_or(rel);
    name.strip_suffix(suffix).unwrap_or(name)
}

/// Recomputes checksums and counts for an authored corpus and writes
/// `manifest.json`.
pub fn write_manifest(root: &Path) -> Result<AssetManifest, AssetError> {
    let files = asset_files(root)?;
    let mut checksums = BTreeMap::new();
    for f in &files {
        checksums.insert(f.clone(), sha256_hex(&read(root, f)?));
    }
    let palettes: Vec<Palette> = if root.join("palettes.json").is_file() {
        parse_json(root, "palettes.json")?
    } else {
        Vec::new()
    };
    let counts = AssetCounts {
        layouts: list(root, "layouts", ".json")?.len(),
        vgs: list(root, "vgs", ".meta.json")?.len(),
        connections: list(root, "connections", ".meta.json")?.len(),
        palettes: palettes.len(),
        pivots: list(root, "pivots", ".svg")?.len(),
    };
    let manifest = AssetManifest {
        format_version: FORMAT_VERSION,
        counts,
        checksums,
        root: root.to_path_buf(),
    };
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    let path = root.join("manifest.json");
    fs::write(&path, json).map_err(|source| AssetError::Io { path, source })?;
    Ok(manifest)
}

pub fn load_corpus(root: &Path) -> Result<AssetStore, AssetError> {
    if !root.join("manifest.json").is_file() {
        return Err(AssetError::MissingManifest(root.to_path_buf()));
    }
    let mut manifest: AssetManifest = parse_json(root, "manifest.json")?;
    manifest.root = root.to_path_buf();
    if manifest.format_version != FORMAT_VERSION {
        return Err(AssetError::VersionMismatch {
            found: manifest.format_version,
            expected: FORMAT_VERSION,
        });
    }

    let files = asset_files(root)?;
    for f in &files {
        let Some(expected) = manifest.checksums.get(f) else {
            return Err(corrupt(f, "not listed in manifest"));
        };
        if *expected != sha256_hex(&read(root, f)?) {
            return Err(corrupt(f, "checksum mismatch"));
        }
    }
    if let Some(missing) = manifest.checksums.keys().find(|k| !files.contains(k)) {
        return Err(corrupt(missing, "listed in manifest but missing on disk"));
    }

    let mut layouts = Vec::new();
    for rel in list(root, "layouts", ".json")? {
        let layout: VifLayout = parse_json(root, &rel)?;
        if layout.id != stem(&rel, ".json") {
            return Err(corrupt(&rel, format!("id `{}` does not match file name", layout.id)));
        }
        layout.validate().map_err(|e| corrupt(&rel, e))?;
        layouts.push(layout);
    }

    let mut vgs = Vec::new();
    for rel in list(root, "vgs", ".meta.json")? {
        let meta: VgDesignMeta = parse_json(root, &rel)?;
        let id = stem(&rel, ".meta.json").to_string();
        if meta.id != id {
            return Err(corrupt(&rel, format!("id `{}` does not match file name", meta.id)));
        }
        let svg_rel = format!("vgs/{id}.svg");
        if !root.join(&svg_rel).is_file() {
            return Err(corrupt(&rel, "sidecar without SVG"));
        }
        let svg = read_string(root, &svg_rel)?;
        vgs.push(VgDesign::from_parts(meta, svg).map_err(|e| corrupt(&svg_rel, e))?);
    }
    for rel in list(root, "vgs", ".svg")? {
        let id = stem(&rel, ".svg");
        if !vgs.iter().any(|v| v.id == id) {
            return Err(corrupt(&rel, "SVG without .meta.json sidecar"));
        }
    }

    let mut connections = Vec::new();
    for rel in list(root, "connections", ".meta.json")? {
        let meta: ConnectionDesignMeta = parse_json(root, &rel)?;
        let id = stem(&rel, ".meta.json").to_string();
        if meta.id != id {
            return Err(corrupt(&rel, format!("id `{}` does not match file name", meta.id)));
        }
        let svg_rel = format!("connections/{id}.svg");
        if !root.join(&svg_rel).is_file() {
            return Err(corrupt(&rel, "sidecar without SVG"));
        }
        let svg = read_string(root, &svg_rel)?;
        connections.push(ConnectionDesign::from_parts(meta, svg).map_err(|e| corrupt(&svg_rel, e))?);
    }

    let mut pivots = Vec::new();
    for rel in list(root, "pivots", ".svg")? {
        let svg = read_string(root, &rel)?;
        svg_ids(&svg).map_err(|e| corrupt(&rel, e))?;
        pivots.push(PivotAsset {
            id: stem(&rel, ".svg").to_string(),
            svg_doc: svg,
        });
    }

    let palettes: Vec<Palette> = if root.join("palettes.json").is_file() {
        parse_json(root, "palettes.json")?
    } else {
        Vec::new()
    };
    let connection_table: ConnectionTable = if root.join("c_vif_table.json").is_file() {
        parse_json(root, "c_vif_table.json")?
    } else {
        ConnectionTable::new()
    };

    let store = AssetStore::from_parts(layouts, vgs, connections, palettes, pivots, connection_table)
        .map_err(|(file, reason)| corrupt(file, reason))?;

    let counts = AssetCounts {
        layouts: store.layouts.len(),
        vgs: store.vgs.len(),
        connections: store.connections.len(),
        palettes: store.palettes.len(),
        pivots: store.pivots.len(),
    };
    if counts != manifest.counts {
        return Err(corrupt(
            "manifest.json",
            format!("counts {:?} do not match disk {:?}", manifest.counts, counts),
        ));
    }
    Ok(AssetStore { manifest, ..store })
}

impl AssetStore {
    /// Builds a store from in-memory assets with the same validation as
    /// [`load_corpus`]. Errors carry `(asset id, reason)`.
    pub fn from_parts(
        mut layouts: Vec<VifLayout>,
        mut vgs: Vec<VgDesign>,
        mut connections: Vec<ConnectionDesign>,
        mut palettes: Vec<Palette>,
        mut pivots: Vec<PivotAsset>,
        connection_table: ConnectionTable,
    ) -> Result<AssetStore, (String, String)> {
        layouts.sort_by(|a, b| a.id.cmp(&b.id));
        vgs.sort_by(|a, b| a.id.cmp(&b.id));
        connections.sort_by(|a, b| a.id.cmp(&b.id));
        palettes.sort_by(|a, b| a.id.cmp(&b.id));
        pivots.sort_by(|a, b| a.id.cmp(&b.id));

        for l in &layouts {
            l.validate().map_err(|e| (l.id.clone(), e))?;
        }
        fn dup<T>(items: &[T], id: impl Fn(&T) -> &str) -> Option<String> {
            items
                .windows(2)
                .find(|w| id(&w[0]) == id(&w[1]))
                .map(|w| id(&w[0]).to_string())
        }
        let dupe = dup(&layouts, |l| &l.id)
            .or_else(|| dup(&vgs, |v| &v.id))
            .or_else(|| dup(&connections, |c| &c.id))
            .or_else(|| dup(&palettes, |p| &p.id))
            .or_else(|| dup(&pivots, |p| &p.id));
        if let Some(id) = dupe {
            return Err((id, "duplicate id".into()));
        }

        let labelled: BTreeSet<ClusterId> = layouts.iter().filter_map(|l| l.cluster_id).collect();
        let known = |c: ClusterId| {
            if labelled.is_empty() {
                c < DEFAULT_CLUSTER_COUNT
            } else {
                labelled.contains(&c)
            }
        };
        for v in &vgs {
            if let Some(c) = v.clusters.iter().find(|c| !known(**c)) {
                return Err((v.id.clone(), format!("unknown cluster id {c}")));
            }
        }
        for (style, clusters) in &connection_table {
            if let Some(c) = clusters.iter().find(|c| !known(**c)) {
                return Err((style.to_string(), format!("unknown cluster id {c}")));
            }
        }
        for p in &palettes {
            if p.series.len() < Palette::MIN_SERIES {
                return Err((
                    p.id.clone(),
                    format!("palette needs {} series colors", Palette::MIN_SERIES),
                ));
            }
        }

        Ok(AssetStore {
            manifest: AssetManifest {
                format_version: FORMAT_VERSION,
                counts: AssetCounts {
                    layouts: layouts.len(),
                    vgs: vgs.len(),
                    connections: connections.len(),
                    palettes: palettes.len(),
                    pivots: pivots.len(),
                },
                checksums: BTreeMap::new(),
                root: PathBuf::new(),
            },
            layouts,
            vgs,
            connections,
            palettes,
            pivots,
            connection_table,
        })
    }

    pub fn root(&self) -> &Path {
        &self.manifest.root
    }

    pub fn layouts(&self) -> &[VifLayout] {
        &self.layouts
    }

    pub fn vgs(&self) -> &[VgDesign] {
        &self.vgs
    }

    pub fn connections(&self) -> &[ConnectionDesign] {
        &self.connections
    }

    pub fn palettes(&self) -> &[Palette] {
        &self.palettes
    }

    pub fn pivots(&self) -> &[PivotAsset] {
        &self.pivots
    }

    pub fn connection_table(&self) -> &ConnectionTable {
        &self.connection_table
    }

    pub fn layout(&self, id: &str) -> Option<&VifLayout> {
        self.layouts
            .binary_search_by(|l| l.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.layouts[i])
    }

    pub fn vg(&self, id: &str) -> Option<&VgDesign> {
        self.vgs
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.vgs[i])
    }

    pub fn connection(&self, id: &str) -> Option<&ConnectionDesign> {
        self.connections.iter().find(|c| c.id == id)
    }

    pub fn palette(&self, id: &str) -> Option<&Palette> {
        self.palettes.iter().find(|p| p.id == id)
    }

    pub fn pivot(&self, id: &str) -> Option<&PivotAsset> {
        self.pivots.iter().find(|p| p.id == id)
    }

    /// Layouts with exactly `n` points, ordered by id.
    pub fn layouts_with_count(&self, n: usize) -> Vec<&VifLayout> {
        self.layouts.iter().filter(|l| l.points.len() == n).collect()
    }

    /// Designs whose placeholder set covers `sig`, ordered by id.
    pub fn vgs_matching(&self, sig: ComponentSignature) -> Vec<&VgDesign> {
        self.vgs.iter().filter(|v| v.placeholders().covers(sig)).collect()
    }

    pub fn connections_of_style(&self, style: ConnectionStyle) -> Vec<&ConnectionDesign> {
        self.connections.iter().filter(|c| c.style_class == style).collect()
    }
}
