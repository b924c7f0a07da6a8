//! Writes the bundled sample pack: layouts for the 12 VIF classes, VG and
//! connection designs, pivots, palettes, the connection-style table, the
//! manifest and the three index files.
//!
//! ```text
//! cargo run --release -p infoforge --example author_sample_pack [-- <dir>]
//! ```

use infoforge::assets::{
    load_corpus, write_manifest, Axis, ClusterId, ConnectionDesignMeta, ConnectionStyle, ConnectionTable, Palette,
    SlotRect, Slots, VgDesignMeta, VifLayout,
};
use infoforge::color::Rgb;
use infoforge::geometry::Point;
use infoforge::index::{build_indices, write_indices, IndexConfig};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

const CLASSES: [&str; 12] = [
    "landscape",
    "portrait",
    "clock",
    "arch",
    "up-ladder",
    "down-ladder",
    "left-wing",
    "right-wing",
    "spiral",
    "zigzag",
    "bowl",
    "snake",
];

/// `n` points of a class shape, scaled by `scale` about the canvas center.
fn class_points(class: usize, n: usize, scale: f64) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            let span = 0.12 + 0.76 * t;
            let (x, y) = match class {
                0 => (span, 0.5),
                1 => (0.5, span),
                2 => {
                    let a = -PI / 2.0 + 2.0 * PI * i as f64 / n as f64;
                    (0.5 + 0.36 * a.cos(), 0.5 + 0.36 * a.sin())
                }
                3 => {
                    let a = PI + PI * t;
                    (0.5 + 0.38 * a.cos(), 0.66 + 0.42 * a.sin())
                }
                4 => (span, 1.0 - span),
                5 => (span, span),
                6 => (0.2 + 0.6 * (2.0 * t - 1.0).abs(), span),
                7 => (0.8 - 0.6 * (2.0 * t - 1.0).abs(), span),
                8 => {
                    let a = -PI / 2.0 + 2.2 * PI * t;
                    let r = 0.4 * (1.0 - 0.45 * t);
                    (0.5 + r * a.cos(), 0.5 + r * a.sin())
                }
                9 => (span, if i % 2 == 0 { 0.3 } else { 0.7 }),
                10 => {
                    let a = PI - PI * t;
                    (0.5 + 0.38 * a.cos(), 0.34 + 0.42 * a.sin())
                }
                11 => (if i % 2 == 0 { 0.3 } else { 0.7 }, span),
                _ => unreachable!(),
            };
            let r = |v: f64| ((0.5 + (v - 0.5) * scale) * 1e4).round() / 1e4;
            Point::new(r(x), r(y))
        })
        .collect()
}

fn layouts() -> Vec<VifLayout> {
    let mut out = Vec::new();
    for (c, name) in CLASSES.iter().enumerate() {
        for n in 4..=8 {
            for (suffix, scale) in [("", 1.0), ("-inset", 0.82)] {
                let mut l = VifLayout::new(format!("{name}-{n}{suffix}"), class_points(c, n, scale))
                    .with_cluster(c as ClusterId);
                l.source = "sample-pack".into();
                out.push(l);
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Slot {
    Title,
    Text,
    Label,
    Image,
}

struct Body {
    size: [f64; 2],
    shape: String,
    inner: SlotRect,
}

fn body(kind: &str) -> Body {
    let r = |x, y, w, h| SlotRect { x, y, w, h };
    let (size, shape, inner) = match kind {
        "disc" => ([120.0, 120.0], r#"<circle cx="60" cy="60" r="56"/>"#.to_string(), r(24.0, 24.0, 72.0, 72.0)),
        "ring" => (
            [110.0, 110.0],
            r#"<circle cx="55" cy="55" r="50" stroke-width="10"/>"#.to_string(),
            r(22.0, 22.0, 66.0, 66.0),
        ),
        "card" => (
            [160.0, 110.0],
            r#"<rect x="3" y="3" width="154" height="104" rx="12"/><rect class="band" x="3" y="3" width="154" height="16" rx="8" fill="currentColor" fill-opacity="1"/>"#.to_string(),
            r(12.0, 24.0, 136.0, 78.0),
        ),
        "pin" => (
            [120.0, 140.0],
            r#"<path d="M60 4L92 44A50 50 0 1 1 28 44Z"/>"#.to_string(),
            r(28.0, 56.0, 64.0, 62.0),
        ),
        "hex" => (
            [120.0, 130.0],
            r#"<polygon points="60,3 116,35 116,95 60,127 4,95 4,35"/>"#.to_string(),
            r(20.0, 34.0, 80.0, 62.0),
        ),
        "shield" => (
            [120.0, 140.0],
            r#"<path d="M60 3L116 18V70C116 104 90 126 60 137C30 126 4 104 4 70V18Z"/>"#.to_string(),
            r(18.0, 24.0, 84.0, 86.0),
        ),
        "tab" => (
            [140.0, 120.0],
            r#"<path d="M4 26H56L70 4L84 26H136V116H4Z"/>"#.to_string(),
            r(12.0, 32.0, 116.0, 78.0),
        ),
        "diamond" => (
            [130.0, 130.0],
            r#"<polygon points="65,3 127,65 65,127 3,65"/>"#.to_string(),
            r(36.0, 36.0, 58.0, 58.0),
        ),
        "banner" => (
            [180.0, 80.0],
            r#"<path d="M20 6H160L176 40L160 74H20L4 40Z"/>"#.to_string(),
            r(24.0, 10.0, 132.0, 60.0),
        ),
        "bubble" => (
            [140.0, 124.0],
            r#"<path d="M16 24H60L70 4L80 24H124A12 12 0 0 1 136 36V108A12 12 0 0 1 124 120H16A12 12 0 0 1 4 108V36A12 12 0 0 1 16 24Z"/>"#.to_string(),
            r(14.0, 32.0, 112.0, 80.0),
        ),
        "stamp" => (
            [120.0, 120.0],
            r#"<rect x="4" y="4" width="112" height="112" rx="18" stroke-dasharray="10 5"/>"#.to_string(),
            r(16.0, 16.0, 88.0, 88.0),
        ),
        "flag" => (
            [130.0, 120.0],
            r#"<path d="M10 4V116"/><path d="M16 8H124L108 40L124 72H16Z"/>"#.to_string(),
            r(22.0, 12.0, 84.0, 56.0),
        ),
        "octagon" => (
            [120.0, 120.0],
            r#"<polygon points="38,4 82,4 116,38 116,82 82,116 38,116 4,82 4,38"/>"#.to_string(),
            r(20.0, 22.0, 80.0, 76.0),
        ),
        _ => unreachable!("unknown body {kind}"),
    };
    Body { size, shape, inner }
}

/// Splits the inner area top to bottom in image, title, label, text order.
fn slots(inner: SlotRect, kinds: &[Slot]) -> Slots {
    let weight = |s: Slot| match s {
        Slot::Image => 3.0,
        Slot::Title => 1.3,
        Slot::Label => 2.0,
        Slot::Text => 2.6,
    };
    let order = |s: Slot| match s {
        Slot::Image => 0,
        Slot::Title => 1,
        Slot::Label => 2,
        Slot::Text => 3,
    };
    let mut ks = kinds.to_vec();
    ks.sort_by_key(|s| order(*s));
    let total: f64 = ks.iter().map(|s| weight(*s)).sum();
    let gap = 2.0;
    let usable = inner.h - gap * (ks.len() - 1) as f64;
    let mut y = inner.y;
    let mut out = Slots::default();
    for s in ks {
        let h = usable * weight(s) / total;
        let rect = SlotRect {
            x: inner.x,
            y: (y * 100.0).round() / 100.0,
            w: inner.w,
            h: (h * 100.0).round() / 100.0,
        };
        match s {
            Slot::Title => out.title = Some(rect),
            Slot::Text => out.text = Some(rect),
            Slot::Label => out.label = Some(rect),
            Slot::Image => out.image = Some(rect),
        }
        y += h + gap;
    }
    out
}

fn vg_svg(b: &Body, s: &Slots) -> String {
    let [w, h] = b.size;
    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">
  <g id="body" fill="currentColor" fill-opacity="0.14" stroke="currentColor" stroke-width="5" stroke-linejoin="round">{}</g>
"#,
        b.shape
    );
    for (name, r) in s.iter() {
        let _ = writeln!(
            svg,
            r#"  <rect id="ph-{name}" x="{}" y="{}" width="{}" height="{}" fill="none"/>"#,
            r.x, r.y, r.w, r.h
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn vg_designs() -> Vec<(VgDesignMeta, String)> {
    use Slot::*;
    let specs: [(&str, &[Slot]); 27] = [
        ("disc", &[Label]),
        ("disc", &[Title, Label]),
        ("ring", &[Label]),
        ("ring", &[Label, Text]),
        ("card", &[Title, Text]),
        ("card", &[Title, Text, Label, Image]),
        ("card", &[Title, Text, Image]),
        ("pin", &[Title]),
        ("pin", &[Label, Title]),
        ("hex", &[Title, Text]),
        ("hex", &[Label, Text]),
        ("shield", &[Title, Text, Label]),
        ("shield", &[Title, Text, Label, Image]),
        ("tab", &[Title, Text]),
        ("tab", &[Text]),
        ("diamond", &[Label]),
        ("diamond", &[Title]),
        ("banner", &[Title]),
        ("banner", &[Title, Text]),
        ("bubble", &[Text]),
        ("bubble", &[Title, Text, Image]),
        ("stamp", &[Title, Text, Label, Image]),
        ("stamp", &[Image, Title]),
        ("flag", &[Title, Text]),
        ("octagon", &[Label, Text]),
        ("octagon", &[Title, Text, Label]),
        ("card", &[Text, Image]),
    ];
    specs
        .iter()
        .enumerate()
        .map(|(j, (kind, kinds))| {
            let b = body(kind);
            let s = slots(b.inner, kinds);
            let tag: String = kinds
                .iter()
                .map(|k| match k {
                    Title => 't',
                    Text => 'x',
                    Label => 'l',
                    Image => 'i',
                })
                .collect();
            let mut clusters = vec![(j % 12) as ClusterId, ((j * 7 + 5) % 12) as ClusterId];
            if j % 3 == 0 {
                clusters.push(((j * 5 + 1) % 12) as ClusterId);
            }
            clusters.sort_unstable();
            clusters.dedup();
            let meta = VgDesignMeta {
                id: format!("vg-{j:02}-{kind}-{tag}"),
                native_size: b.size,
                anchor: None,
                slots: s.clone(),
                clusters,
            };
            (meta, vg_svg(&b, &s))
        })
        .collect()
}

fn connection_designs() -> Vec<(ConnectionDesignMeta, String)> {
    let wrap = |w: f64, h: f64, body: &str| {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">\n  {body}\n</svg>\n"
        )
    };
    let arrowhead = r#"<path d="M82 2L100 10L82 18Z" fill="currentColor"/>"#;
    let list: Vec<(&str, ConnectionStyle, [f64; 2], Axis, String)> = vec![
        (
            "fs-chevron",
            ConnectionStyle::FlowShape,
            [100.0, 40.0],
            Axis::X,
            r#"<path d="M2 2H70L98 20L70 38H2L30 20Z" fill="currentColor"/>"#.into(),
        ),
        (
            "fs-double-chevron",
            ConnectionStyle::FlowShape,
            [100.0, 40.0],
            Axis::X,
            r#"<path d="M2 2H30L50 20L30 38H2L22 20Z M48 2H76L96 20L76 38H48L68 20Z" fill="currentColor"/>"#.into(),
        ),
        (
            "fs-curve",
            ConnectionStyle::FlowShape,
            [100.0, 40.0],
            Axis::X,
            r#"<path d="M4 30Q50 -6 84 22" fill="none" stroke="currentColor" stroke-width="6" stroke-linecap="round"/><path d="M76 10L98 30L70 32Z" fill="currentColor"/>"#.into(),
        ),
        (
            "reg-arrow",
            ConnectionStyle::Regular,
            [100.0, 20.0],
            Axis::X,
            format!(r#"<path d="M0 10H84" stroke="currentColor" stroke-width="5"/>{arrowhead}"#),
        ),
        (
            "reg-dashed",
            ConnectionStyle::Regular,
            [100.0, 20.0],
            Axis::X,
            r#"<path d="M0 10H100" stroke="currentColor" stroke-width="5" stroke-dasharray="10 6"/>"#.into(),
        ),
        (
            "reg-dots",
            ConnectionStyle::Regular,
            [100.0, 20.0],
            Axis::X,
            r#"<g fill="currentColor"><circle cx="15" cy="10" r="7"/><circle cx="50" cy="10" r="7"/><circle cx="85" cy="10" r="7"/></g>"#.into(),
        ),
        (
            "alt-bracket",
            ConnectionStyle::Alternate,
            [100.0, 30.0],
            Axis::X,
            r#"<path d="M3 27V6H97V27" fill="none" stroke="currentColor" stroke-width="5"/>"#.into(),
        ),
        (
            "alt-wave",
            ConnectionStyle::Alternate,
            [100.0, 30.0],
            Axis::X,
            r#"<path d="M2 15C14 0 26 0 38 15S62 30 74 15S90 2 98 10" fill="none" stroke="currentColor" stroke-width="5"/>"#.into(),
        ),
        (
            "alt-bold-arrow",
            ConnectionStyle::Alternate,
            [100.0, 30.0],
            Axis::X,
            r#"<path d="M0 9H72V1L100 15L72 29V21H0Z" fill="currentColor"/>"#.into(),
        ),
        (
            "piv-spoke",
            ConnectionStyle::Pivot,
            [100.0, 20.0],
            Axis::X,
            r#"<path d="M6 10H94" stroke="currentColor" stroke-width="4"/><circle cx="94" cy="10" r="6" fill="currentColor"/>"#.into(),
        ),
        (
            "piv-dotted",
            ConnectionStyle::Pivot,
            [100.0, 20.0],
            Axis::X,
            r#"<path d="M2 10H98" stroke="currentColor" stroke-width="5" stroke-linecap="round" stroke-dasharray="0.5 9"/>"#.into(),
        ),
        (
            "piv-wedge",
            ConnectionStyle::Pivot,
            [20.0, 100.0],
            Axis::Y,
            r#"<path d="M10 0L18 100H2Z" fill="currentColor"/>"#.into(),
        ),
    ];
    list.into_iter()
        .map(|(id, style, size, axis, body)| {
            (
                ConnectionDesignMeta {
                    id: id.into(),
                    style,
                    native_size: size,
                    length_axis: axis,
                },
                wrap(size[0], size[1], &body),
            )
        })
        .collect()
}

fn pivots() -> Vec<(&'static str, String)> {
    let wrap = |body: &str| {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 200 200\" width=\"200\" height=\"200\">\n  {body}\n</svg>\n"
        )
    };
    vec![
        (
            "globe",
            wrap(
                r##"<g fill="none" stroke="#2b4c7e" stroke-width="6"><circle cx="100" cy="100" r="90"/><ellipse cx="100" cy="100" rx="40" ry="90"/><path d="M10 100H190M24 55H176M24 145H176"/></g>"##,
            ),
        ),
        (
            "bulb",
            wrap(
                r##"<path d="M100 12A62 62 0 0 1 138 124V150H62V124A62 62 0 0 1 100 12Z" fill="#ffd166" stroke="#3d3d3d" stroke-width="6"/><path d="M70 164H130M76 180H124" stroke="#3d3d3d" stroke-width="8" stroke-linecap="round"/>"##,
            ),
        ),
        (
            "target",
            wrap(
                r##"<g fill="none" stroke="#c1121f" stroke-width="14"><circle cx="100" cy="100" r="86"/><circle cx="100" cy="100" r="52"/></g><circle cx="100" cy="100" r="18" fill="#c1121f"/>"##,
            ),
        ),
    ]
}

fn palettes() -> Vec<Palette> {
    let p = |id: &str, bg: &str, text: &str, series: [&str; 6]| Palette {
        id: id.into(),
        background: bg.parse().unwrap(),
        series: series.iter().map(|s| s.parse::<Rgb>().unwrap()).collect(),
        text_color: text.parse().unwrap(),
    };
    vec![
        p("ink", "#ffffff", "#1a1a1a", ["#1b3a4b", "#3d1e6d", "#6b1e1e", "#1e4d2b", "#4a3b00", "#222222"]),
        p("ocean", "#ffffff", "#0d1b2a", ["#0b3954", "#087e8b", "#1d4e89", "#3c6e71", "#284b63", "#00509d"]),
        p("forest", "#fbfaf5", "#1b2616", ["#2d6a4f", "#1b4332", "#40916c", "#52796f", "#354f52", "#5a3e2b"]),
        p("ember", "#fffaf3", "#2b0a0a", ["#9d0208", "#d00000", "#6a040f", "#370617", "#b23a00", "#7f4f24"]),
        p("pastel", "#ffffff", "#333333", ["#fde2e4", "#e2ece9", "#dfe7fd", "#fff1e6", "#eae4e9", "#cddafd"]),
        p("neon", "#111111", "#f5f5f5", ["#39ff14", "#00e5ff", "#ff6ec7", "#fff01f", "#ff9f1c", "#b388ff"]),
        p("dusk", "#1d1b2e", "#eeeeee", ["#f4a261", "#e9c46a", "#90e0ef", "#cdb4db", "#ffafcc", "#a7c957"]),
    ]
}

/// Style -> VIF classes it was observed with. Class ids follow `CLASSES`.
fn connection_table() -> ConnectionTable {
    ConnectionTable::from([
        (ConnectionStyle::None, vec![0, 1, 4, 5, 8]),
        (ConnectionStyle::Regular, vec![0, 1, 4, 5, 6, 7, 9, 11]),
        (ConnectionStyle::Alternate, vec![0, 1, 9, 11]),
        (ConnectionStyle::FlowShape, vec![2, 3, 8, 10]),
        (ConnectionStyle::Pivot, vec![2, 3]),
    ])
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).unwrap();
    }
    fs::write(path, bytes).unwrap();
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

fn main() {
    let root: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/sample-pack"));
    for dir in ["layouts", "vgs", "connections", "pivots"] {
        let _ = fs::remove_dir_all(root.join(dir));
    }

    for l in layouts() {
        write(&root.join(format!("layouts/{}.json", l.id)), json(&l));
    }
    for (meta, svg) in vg_designs() {
        write(&root.join(format!("vgs/{}.meta.json", meta.id)), json(&meta));
        write(&root.join(format!("vgs/{}.svg", meta.id)), svg);
    }
    for (meta, svg) in connection_designs() {
        write(&root.join(format!("connections/{}.meta.json", meta.id)), json(&meta));
        write(&root.join(format!("connections/{}.svg", meta.id)), svg);
    }
    for (id, svg) in pivots() {
        write(&root.join(format!("pivots/{id}.svg")), svg);
    }
    write(&root.join("palettes.json"), json(&palettes()));
    write(&root.join("c_vif_table.json"), json(&connection_table()));

    let manifest = write_manifest(&root).expect("manifest");
    let store = load_corpus(&root).expect("authored pack loads");
    let indices = build_indices(&store, &IndexConfig::default()).expect("indices build");
    write_indices(&root, &indices).expect("indices written");

    let d = &indices.cluster_model.diagnostics;
    println!("wrote {} with {:?}", root.display(), manifest.counts);
    println!(
        "clusters: k={} eps={:.4} density_peaks={} insufficient_density={} lloyd_iterations={}",
        indices.cluster_model.k(),
        d.eps,
        d.density_peaks,
        d.insufficient_density,
        d.lloyd_iterations
    );
    let mut agree = 0;
    for l in store.layouts() {
        if indices.cluster_model.cluster_of(&l.id) == l.cluster_id {
            agree += 1;
        }
    }
    println!("cluster/class agreement: {agree}/{}", store.layouts().len());
}
