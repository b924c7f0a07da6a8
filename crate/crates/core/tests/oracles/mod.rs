//! Independent checks on assembled output, shared with the acceptance
//! runner in the service crate.
#![allow(dead_code)]

pub mod blobs;
pub mod energy;
pub mod tfidf;

use infoforge::assets::{AssetStore, ConnectionStyle};
use infoforge::compose::{assemble, generate_connections, ConnectionParams, Selection, VgTransform};
use infoforge::content::{ComponentSignature, ContentSpec, VgContent};
use infoforge::geometry::{BBox, Canvas, Point};
use infoforge::layout::{EnergyWeights, PivotPlacement};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense stroke along the polyline through `points`, one sample per `step`.
pub fn trace(points: &[Point], step: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for w in points.windows(2) {
        let m = (w[0].distance(w[1]) / step).ceil().max(1.0) as usize;
        for s in 0..m {
            out.push(w[0].lerp(w[1], s as f64 / m as f64));
        }
    }
    out.push(*points.last().unwrap());
    out
}

/// Angle in radians between the rotated "up" vector and the true direction
/// to the pivot center, in pixel space.
pub fn facing_error(t: &VgTransform, canvas: &Canvas, pivot: Option<&PivotPlacement>) -> f64 {
    let th = t.rotation_deg.to_radians();
    let (fx, fy) = (th.sin(), -th.cos());
    let Some(pv) = pivot else {
        return th.sin().atan2(th.cos()).abs();
    };
    let b = pv.bbox;
    let cx = (b.x + b.w / 2.0) * canvas.width();
    let cy = (b.y + b.h / 2.0) * canvas.height();
    let (dx, dy) = (cx - t.position.x * canvas.width(), cy - t.position.y * canvas.height());
    let cross = fx * dy - fy * dx;
    let dot = fx * dx + fy * dy;
    cross.atan2(dot).abs()
}

/// `[x0, y0, x1, y1]` covering the footprint both rotated and upright.
pub fn vg_box(t: &VgTransform, canvas: &Canvas) -> [f64; 4] {
    let (cx, cy) = (t.position.x * canvas.width(), t.position.y * canvas.height());
    let [w, h] = t.footprint_px;
    let th = t.rotation_deg.to_radians();
    let mut b = [cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0];
    for (sx, sy) in [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)] {
        let (x, y) = (sx * w / 2.0, sy * h / 2.0);
        let rx = cx + x * th.cos() - y * th.sin();
        let ry = cy + x * th.sin() + y * th.cos();
        b = [b[0].min(rx), b[1].min(ry), b[2].max(rx), b[3].max(ry)];
    }
    b
}

pub fn overlap(a: [f64; 4], b: [f64; 4]) -> f64 {
    let w = a[2].min(b[2]) - a[0].max(b[0]);
    let h = a[3].min(b[3]) - a[1].max(b[1]);
    if w > 0.0 && h > 0.0 {
        w * h
    } else {
        0.0
    }
}

/// Overlap area summed over VG pairs and VG/pivot pairs, plus any area
/// outside the canvas.
pub fn placement_violation(ts: &[VgTransform], canvas: &Canvas, pivot: Option<&PivotPlacement>) -> f64 {
    let boxes: Vec<[f64; 4]> = ts.iter().map(|t| vg_box(t, canvas)).collect();
    let (w, h) = (canvas.width(), canvas.height());
    let mut bad = 0.0;
    for (i, a) in boxes.iter().enumerate() {
        for b in &boxes[i + 1..] {
            bad += overlap(*a, *b);
        }
        if let Some(pv) = pivot {
            let p = pv.bbox;
            bad += overlap(*a, [p.x * w, p.y * h, (p.x + p.w) * w, (p.y + p.h) * h]);
        }
        let inside = overlap(*a, [0.0, 0.0, w, h]);
        bad += (a[2] - a[0]) * (a[3] - a[1]) - inside;
    }
    bad
}

pub fn expected_connections(style: ConnectionStyle, n: usize) -> usize {
    match style {
        ConnectionStyle::Regular | ConnectionStyle::FlowShape => n - 1,
        ConnectionStyle::Alternate => (n - 1).div_ceil(2),
        ConnectionStyle::Pivot => n,
        ConnectionStyle::None => 0,
    }
}

/// 2×3 affine matrix `[a, b, c, d, e, f]` as in SVG.
type Affine = [f64; 6];

fn mul(m: Affine, n: Affine) -> Affine {
    [
        m[0] * n[0] + m[2] * n[1],
        m[1] * n[0] + m[3] * n[1],
        m[0] * n[2] + m[2] * n[3],
        m[1] * n[2] + m[3] * n[3],
        m[0] * n[4] + m[2] * n[5] + m[4],
        m[1] * n[4] + m[3] * n[5] + m[5],
    ]
}

fn parse_transform(s: &str) -> Affine {
    let mut m = [1.0, 0.0, 0.0, 1.0, 0.0, 0.0];
    for part in s.split(')').filter(|p| !p.trim().is_empty()) {
        let (name, args) = part.split_once('(').expect("transform syntax");
        let v: Vec<f64> = args
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|a| !a.is_empty())
            .map(|a| a.parse().expect("transform number"))
            .collect();
        let step = match name.trim() {
            "translate" => [1.0, 0.0, 0.0, 1.0, v[0], *v.get(1).unwrap_or(&0.0)],
            "scale" => [v[0], 0.0, 0.0, *v.get(1).unwrap_or(&v[0]), 0.0, 0.0],
            "rotate" => {
                let t = v[0].to_radians();
                let r = [t.cos(), t.sin(), -t.sin(), t.cos(), 0.0, 0.0];
                if v.len() == 3 {
                    let to = [1.0, 0.0, 0.0, 1.0, v[1], v[2]];
                    let back = [1.0, 0.0, 0.0, 1.0, -v[1], -v[2]];
                    mul(mul(to, r), back)
                } else {
                    r
                }
            }
            "matrix" => [v[0], v[1], v[2], v[3], v[4], v[5]],
            other => panic!("unsupported transform {other}"),
        };
        m = mul(m, step);
    }
    m
}

/// Effective on-screen rotation (radians) of every `<text>` element.
pub fn text_rotations(svg: &str) -> Vec<f64> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed");
    doc.descendants()
        .filter(|n| n.has_tag_name("text"))
        .map(|n| {
            let mut chain: Vec<roxmltree::Node> = n.ancestors().filter(|a| a.is_element()).collect();
            chain.reverse();
            let m = chain
                .iter()
                .filter_map(|a| a.attribute("transform"))
                .fold([1.0, 0.0, 0.0, 1.0, 0.0, 0.0], |acc, t| mul(acc, parse_transform(t)));
            m[1].atan2(m[0])
        })
        .collect()
}

/// Parses the document and rejects leftover placeholders or repeated ids.
pub fn check_document(svg: &str) -> Result<(), String> {
    let doc = roxmltree::Document::parse(svg).map_err(|e| e.to_string())?;
    let mut ids = std::collections::BTreeSet::new();
    for id in doc.descendants().filter_map(|n| n.attribute("id")) {
        if id.starts_with("ph-") {
            return Err(format!("placeholder `{id}` left in output"));
        }
        if !ids.insert(id) {
            return Err(format!("duplicate id `{id}`"));
        }
    }
    Ok(())
}

pub fn connection_groups(svg: &str) -> usize {
    let doc = roxmltree::Document::parse(svg).expect("well-formed");
    doc.descendants()
        .filter(|n| n.attribute("class") == Some("connection"))
        .count()
}

#[derive(Debug, Default)]
pub struct GeometryReport {
    pub cases: usize,
    pub placed: usize,
    pub unplaceable: usize,
    pub max_facing_error: f64,
    pub overlap_area: f64,
    pub max_text_rotation: f64,
    pub count_mismatches: Vec<String>,
    pub document_failures: Vec<String>,
}

impl GeometryReport {
    pub fn passed(&self) -> bool {
        self.placed > 0
            && self.max_facing_error <= 1e-6
            && self.overlap_area == 0.0
            && self.max_text_rotation <= 1e-6
            && self.count_mismatches.is_empty()
            && self.document_failures.is_empty()
    }
}

fn random_pivot(rng: &mut ChaCha8Rng, points: &[Point]) -> Option<PivotPlacement> {
    for _ in 0..50 {
        let (w, h) = (rng.random_range(0.08..0.25), rng.random_range(0.08..0.25));
        let b = BBox::new(rng.random_range(0.0..1.0 - w), rng.random_range(0.0..1.0 - h), w, h).unwrap();
        if !points.iter().any(|p| b.contains(*p)) {
            return Some(PivotPlacement::new(b));
        }
    }
    None
}

/// Randomized (layout, pivot, canvas, style) cases assembled end to end.
pub fn run_geometry_cases(store: &AssetStore, cases: usize, seed: u64) -> GeometryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let need = ComponentSignature {
        has_title: true,
        has_text: true,
        ..Default::default()
    };
    let designs = store.vgs_matching(need);
    let mut report = GeometryReport::default();
    for case in 0..cases {
        let layout = store.layouts().choose(&mut rng).unwrap();
        let n = layout.len();
        let canvas = Canvas::new(rng.random_range(480..2400), rng.random_range(480..2400)).unwrap();
        let pivot = if rng.random_bool(0.7) {
            random_pivot(&mut rng, &layout.points)
        } else {
            None
        };
        let mut styles = vec![
            ConnectionStyle::None,
            ConnectionStyle::Regular,
            ConnectionStyle::Alternate,
            ConnectionStyle::FlowShape,
        ];
        if pivot.is_some() {
            styles.push(ConnectionStyle::Pivot);
        }
        let style = *styles.choose(&mut rng).unwrap();
        let vg = designs.choose(&mut rng).unwrap();
        let content = ContentSpec {
            infographic_title: None,
            items: (0..n)
                .map(|i| VgContent {
                    title: Some(format!("Step {}", i + 1)),
                    text: Some("Short supporting sentence for this step.".into()),
                    ..Default::default()
                })
                .collect(),
        };
        let selection = Selection {
            layout_id: layout.id.clone(),
            vg_design_id: vg.id.clone(),
            connection_style: Some(style),
            ..Default::default()
        };
        report.cases += 1;

        // Count rules hold whether or not the VGs fit.
        for s in &styles {
            let (got, _) =
                generate_connections(*s, "x", &layout.points, pivot.as_ref(), &canvas, &ConnectionParams::default())
                    .unwrap();
            if got.len() != expected_connections(*s, n) {
                report
                    .count_mismatches
                    .push(format!("case {case}: {s} on {} gave {}", layout.id, got.len()));
            }
        }

        let out = match assemble(
            store,
            &canvas,
            &content,
            pivot.as_ref(),
            &selection,
            EnergyWeights::default(),
            case as u64,
            &|_: &str| true,
        ) {
            Ok(out) => out,
            Err(e) if e.code() == "UNPLACEABLE" => {
                report.unplaceable += 1;
                continue;
            }
            Err(e) => {
                report.document_failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        report.placed += 1;
        for t in &out.transforms {
            report.max_facing_error = report.max_facing_error.max(facing_error(t, &canvas, pivot.as_ref()));
        }
        report.overlap_area += placement_violation(&out.transforms, &canvas, pivot.as_ref());
        if let Err(e) = check_document(&out.svg_doc) {
            report.document_failures.push(format!("case {case}: {e}"));
            continue;
        }
        for r in text_rotations(&out.svg_doc) {
            report.max_text_rotation = report.max_text_rotation.max(r.abs());
        }
        let groups = connection_groups(&out.svg_doc);
        if groups != expected_connections(style, n) {
            report
                .count_mismatches
                .push(format!("case {case}: {style} drew {groups} connectors for n={n}"));
        }
    }
    report
}
