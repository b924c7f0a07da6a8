//! Stage 3: placing, filling and connecting VGs into a standalone SVG.
//!
//! [`assemble`] resolves open choices (palette, connection design, image
//! availability) into a [`Provenance`] record and hands it to [`render`].
//! The record is embedded in the document, and rendering it again yields
//! the same bytes.

mod connect;
mod embed;
mod palette;
pub mod svg;
pub mod text;
mod transform;

pub use connect::{generate_connections, ConnectionInstance, ConnectionParams};
pub use embed::{embed_content, EmbedStyle, FONT_FAMILY, MIN_FONT_PX};
pub use palette::{palette_contrast, rank_palettes, readable_on, select_palette, PaletteChoice, MIN_CONTRAST};
pub use transform::{compute_transforms, facing_angle, PxRect, VgTransform, MAX_SCALE, MIN_SCALE, VG_SIDE_FRACTION};

use crate::assets::{AssetStore, ConnectionDesign, ConnectionStyle, Axis};
use crate::content::{AssetResolver, ContentSpec, Issue, Severity};
use crate::geometry::{Canvas, GeometryError};
use crate::layout::{EnergyWeights, PivotPlacement};
use crate::recommend::sample_connection_designs;
use serde::{Deserialize, Serialize};
use std::fmt::Write;
use svg::{escape_text, num, view_box, Rewriter};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComposeError {
    #[error("VGs cannot be placed without overlap even at the minimum scale")]
    Unplaceable,
    #[error("the pivot connection style needs a pivot")]
    PivotRequired,
    #[error("design `{design}` lacks slots needed by item {item}")]
    SignatureMismatch { design: String, item: usize },
    #[error("{items} content items for a layout with {points} points")]
    CountMismatch { items: usize, points: usize },
    #[error("unknown {kind} `{id}`")]
    MissingAsset { kind: &'static str, id: String },
    #[error("the corpus has no palettes")]
    NoPalettes,
    #[error("no connection designs of style {0}")]
    NoDesignsForStyle(ConnectionStyle),
    #[error("malformed SVG: {0}")]
    Svg(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl ComposeError {
    pub fn code(&self) -> &'static str {
        match self {
            ComposeError::Unplaceable => "UNPLACEABLE",
            ComposeError::PivotRequired => "PIVOT_REQUIRED",
            ComposeError::SignatureMismatch { .. } => "SIGNATURE_MISMATCH",
            ComposeError::CountMismatch { .. } => "COUNT_MISMATCH",
            ComposeError::MissingAsset { .. } => "UNKNOWN_ASSET",
            ComposeError::NoPalettes => "NO_PALETTES",
            ComposeError::NoDesignsForStyle(_) => "NO_DESIGNS_FOR_STYLE",
            ComposeError::Svg(_) => "MALFORMED_SVG",
            ComposeError::Geometry(_) => "INVALID_GEOMETRY",
        }
    }
}

/// Everything needed to render an infographic again.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub layout_id: String,
    pub vg_design_id: String,
    pub connection_style: ConnectionStyle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection_design_id: Option<String>,
    pub palette_id: String,
    pub alpha: f64,
    pub seed: u64,
    pub canvas: Canvas,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<PivotPlacement>,
    pub content: ContentSpec,
    /// Items whose image reference did not resolve when assembled.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unresolved_images: Vec<usize>,
}

/// User or recommender choices; unset ones are filled in by [`assemble`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub layout_id: String,
    pub vg_design_id: String,
    pub connection_style: Option<ConnectionStyle>,
    pub connection_design_id: Option<String>,
    pub palette_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssembledInfographic {
    pub svg_doc: String,
    pub provenance: Provenance,
    pub transforms: Vec<VgTransform>,
    pub connections: Vec<ConnectionInstance>,
    pub warnings: Vec<Issue>,
}

#[allow(clippy::too_many_arguments)]
pub fn assemble(
    store: &AssetStore,
    canvas: &Canvas,
    content: &ContentSpec,
    pivot: Option<&PivotPlacement>,
    selection: &Selection,
    weights: EnergyWeights,
    seed: u64,
    resolver: &dyn AssetResolver,
) -> Result<AssembledInfographic, ComposeError> {
    let palette_id = match &selection.palette_id {
        Some(id) => id.clone(),
        None => select_palette(store.palettes(), canvas.background)
            .ok_or(ComposeError::NoPalettes)?
            .palette_id,
    };
    let style = selection.connection_style.unwrap_or(ConnectionStyle::None);
    if style == ConnectionStyle::Pivot && pivot.is_none() {
        return Err(ComposeError::PivotRequired);
    }
    let connection_design_id = match (style, &selection.connection_design_id) {
        (ConnectionStyle::None, _) => None,
        (_, Some(id)) => Some(id.clone()),
        (s, None) => {
            let picked = sample_connection_designs(store, s, seed, 1).map_err(|_| ComposeError::NoDesignsForStyle(s))?;
            Some(picked[0].id.clone())
        }
    };
    let unresolved_images = content
        .items
        .iter()
        .enumerate()
        .filter(|(_, it)| it.image_ref.as_deref().is_some_and(|r| !resolver.resolves(r)))
        .map(|(i, _)| i)
        .collect();
    let provenance = Provenance {
        layout_id: selection.layout_id.clone(),
        vg_design_id: selection.vg_design_id.clone(),
        connection_style: style,
        connection_design_id,
        palette_id,
        alpha: weights.alpha,
        seed,
        canvas: canvas.clone(),
        pivot: pivot.cloned(),
        content: content.clone(),
        unresolved_images,
    };
    render(store, &provenance)
}

fn missing(kind: &'static str, id: &str) -> ComposeError {
    ComposeError::MissingAsset {
        kind,
        id: id.to_string(),
    }
}

/// Deterministic rendering of a provenance record.
pub fn render(store: &AssetStore, prov: &Provenance) -> Result<AssembledInfographic, ComposeError> {
    let canvas = &prov.canvas;
    canvas.validate()?;
    let layout = store.layout(&prov.layout_id).ok_or_else(|| missing("layout", &prov.layout_id))?;
    let vg = store.vg(&prov.vg_design_id).ok_or_else(|| missing("VG design", &prov.vg_design_id))?;
    let palette = store.palette(&prov.palette_id).ok_or_else(|| missing("palette", &prov.palette_id))?;
    let connection = match &prov.connection_design_id {
        Some(id) if prov.connection_style != ConnectionStyle::None => {
            Some(store.connection(id).ok_or_else(|| missing("connection design", id))?)
        }
        _ => None,
    };
    let items = &prov.content.items;
    if items.len() != layout.points.len() {
        return Err(ComposeError::CountMismatch {
            items: items.len(),
            points: layout.points.len(),
        });
    }
    if let Some(pv) = &prov.pivot {
        pv.bbox.validate()?;
    }
    let pivot = prov.pivot.as_ref();

    let mut warnings = Vec::new();
    let choice = palette::rank_palettes(std::slice::from_ref(palette), canvas.background).remove(0);
    if !choice.accessible {
        warnings.push(Issue {
            severity: Severity::Warning,
            item_index: None,
            code: "NO_ACCESSIBLE_PALETTE".into(),
            message: format!(
                "palette `{}` reaches only {:.2}:1 against the background",
                palette.id, choice.min_contrast
            ),
        });
    }

    let transforms = compute_transforms(&layout.points, canvas, pivot, vg.native_size)?;
    let params = ConnectionParams::default();
    let (connections, conn_warnings) = match connection {
        Some(c) => generate_connections(prov.connection_style, &c.id, &layout.points, pivot, canvas, &params)?,
        None => (Vec::new(), Vec::new()),
    };
    warnings.extend(conn_warnings);

    let (w, h) = (num(canvas.width()), num(canvas.height()));
    let mut out = String::new();
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let json = serde_json::to_string(prov).expect("provenance serializes");
    let _ = write!(out, r#"<metadata id="infoforge-provenance">{}</metadata>"#, escape_text(&json));
    let _ = write!(
        out,
        r#"<rect id="background" x="0" y="0" width="{w}" height="{h}" fill="{}"/>"#,
        canvas.background
    );

    if let Some(pv) = pivot {
        out.push_str(r#"<g id="pivot-layer">"#);
        write_pivot(&mut out, store, pv, canvas)?;
        out.push_str("</g>");
    }

    out.push_str(r#"<g id="connections">"#);
    if let Some(design) = connection {
        let thickness = params.thickness_fraction * canvas.min_side() * transforms[0].scale;
        write_connections(&mut out, design, &connections, canvas, thickness, &palette.series)?;
    }
    out.push_str("</g>");

    out.push_str(r#"<g id="vgs">"#);
    for (t, item) in transforms.iter().zip(items) {
        let style = EmbedStyle {
            fill: palette.series[t.item_index % palette.series.len()],
            text_color: palette.text_color,
        };
        let resolved = !prov.unresolved_images.contains(&t.item_index);
        let (frag, issues) = embed_content(vg, item, t, canvas, style, resolved)?;
        out.push_str(&frag);
        warnings.extend(issues);
    }
    out.push_str("</g>");

    if let Some(title) = &prov.content.infographic_title {
        let band = crate::assets::SlotRect {
            x: 0.05 * canvas.width(),
            y: 0.01 * canvas.height(),
            w: 0.9 * canvas.width(),
            h: 0.07 * canvas.height(),
        };
        let fit = text::fit_text(title, band.w, band.h, MIN_FONT_PX, band.h / text::LINE_HEIGHT, true);
        let color = readable_on(canvas.background, palette.text_color);
        let size = fit.font_size;
        let top = band.y + (band.h - fit.lines.len() as f64 * text::LINE_HEIGHT * size) / 2.0;
        let cx = num(band.x + band.w / 2.0);
        let _ = write!(
            out,
            r#"<g id="title"><text x="{cx}" y="{}" font-family="{FONT_FAMILY}" font-size="{}" font-weight="bold" text-anchor="middle" fill="{color}">"#,
            num(top + 0.9 * size),
            num(size)
        );
        for (i, line) in fit.lines.iter().enumerate() {
            let y = top + (0.9 + text::LINE_HEIGHT * i as f64) * size;
            let _ = write!(out, r#"<tspan x="{cx}" y="{}">{}</tspan>"#, num(y), escape_text(line));
        }
        out.push_str("</text></g>");
    }
    out.push_str("</svg>\n");

    Ok(AssembledInfographic {
        svg_doc: out,
        provenance: prov.clone(),
        transforms,
        connections,
        warnings,
    })
}

/// Same as [`render`]; named for the round trip from an embedded record.
pub fn reassemble(store: &AssetStore, prov: &Provenance) -> Result<AssembledInfographic, ComposeError> {
    render(store, prov)
}

/// Pulls the provenance record back out of an assembled document.
pub fn extract_provenance(svg_doc: &str) -> Option<Provenance> {
    let doc = roxmltree::Document::parse(svg_doc).ok()?;
    let node = doc
        .descendants()
        .find(|n| n.has_tag_name("metadata") && n.attribute("id") == Some("infoforge-provenance"))?;
    serde_json::from_str(node.text()?).ok()
}

fn write_pivot(out: &mut String, store: &AssetStore, pv: &PivotPlacement, canvas: &Canvas) -> Result<(), ComposeError> {
    let b = pv.bbox;
    let (x, y, w, h) = (
        num(b.x * canvas.width()),
        num(b.y * canvas.height()),
        num(b.w * canvas.width()),
        num(b.h * canvas.height()),
    );
    let source = match (&pv.svg, &pv.graphic_ref) {
        (Some(svg), _) => Some(svg.as_str()),
        (None, Some(id)) => Some(store.pivot(id).ok_or_else(|| missing("pivot", id))?.svg_doc.as_str()),
        (None, None) => None,
    };
    let Some(source) = source else {
        let stroke = num(canvas.min_side() / 400.0);
        let _ = write!(
            out,
            r##"<rect id="pivot" x="{x}" y="{y}" width="{w}" height="{h}" rx="{stroke}" fill="none" stroke="#9e9e9e" stroke-width="{stroke}" stroke-dasharray="8 6"/>"##
        );
        return Ok(());
    };
    let doc = roxmltree::Document::parse(source).map_err(|e| ComposeError::Svg(e.to_string()))?;
    let root = doc.root_element();
    let vb = view_box(root).unwrap_or([0.0, 0.0, 100.0, 100.0]);
    let _ = write!(
        out,
        r#"<svg id="pivot" x="{x}" y="{y}" width="{w}" height="{h}" viewBox="{} {} {} {}" preserveAspectRatio="xMidYMid meet" overflow="visible">"#,
        num(vb[0]),
        num(vb[1]),
        num(vb[2]),
        num(vb[3])
    );
    Rewriter {
        prefix: "pivot-",
        skip: &|_| false,
    }
    .write_children(root, out);
    out.push_str("</svg>");
    Ok(())
}

fn write_connections(
    out: &mut String,
    design: &ConnectionDesign,
    instances: &[ConnectionInstance],
    canvas: &Canvas,
    thickness: f64,
    series: &[crate::color::Rgb],
) -> Result<(), ComposeError> {
    let doc = roxmltree::Document::parse(&design.svg_doc).map_err(|e| ComposeError::Svg(e.to_string()))?;
    let root = doc.root_element();
    let (nw, nh) = design.native_size;
    let [vx, vy, ..] = view_box(root).unwrap_or([0.0, 0.0, nw, nh]);
    for (j, c) in instances.iter().enumerate() {
        let at = canvas.to_px(c.placement);
        let len = c.length * canvas.min_side();
        let (angle, sx, sy) = match design.native_length_axis {
            Axis::X => (c.angle_deg, len / nw, thickness / nh),
            Axis::Y => (c.angle_deg - 90.0, thickness / nw, len / nh),
        };
        let _ = write!(
            out,
            r#"<g class="connection" transform="translate({} {}) rotate({}) scale({} {}) translate({} {})" color="{}">"#,
            num(at.x),
            num(at.y),
            num(angle),
            num(sx),
            num(sy),
            num(-(vx + nw / 2.0)),
            num(-(vy + nh / 2.0)),
            series[j % series.len()],
        );
        let prefix = format!("c{j}-");
        Rewriter {
            prefix: &prefix,
            skip: &|_| false,
        }
        .write_children(root, out);
        out.push_str("</g>");
    }
    Ok(())
}
