use super::svg::{escape_attr, escape_text, num, view_box, Rewriter};
use super::text::{fit_text, LINE_HEIGHT};
use super::transform::VgTransform;
use super::ComposeError;
use crate::assets::{SlotRect, VgDesign};
use crate::color::Rgb;
use crate::content::{Issue, Severity, VgContent};
use crate::geometry::Canvas;
use std::fmt::Write;

/// Smallest rendered font size, in canvas pixels.
pub const MIN_FONT_PX: f64 = 6.0;
pub const FONT_FAMILY: &str = "Helvetica, Arial, sans-serif";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedStyle {
    /// Becomes `currentColor` inside the design.
    pub fill: Rgb,
    pub text_color: Rgb,
}

struct Ctx<'a> {
    out: &'a mut String,
    issues: &'a mut Vec<Issue>,
    item_index: usize,
    min_size: f64,
    color: Rgb,
}

impl Ctx<'_> {
    fn text(&mut self, field: &str, value: &str, r: SlotRect, bold: bool, width_div: f64) {
        let max = (r.h / LINE_HEIGHT).min(r.w / width_div);
        let fit = fit_text(value, r.w, r.h, self.min_size, max, bold);
        if fit.overflow {
            self.issues.push(Issue {
                severity: Severity::Warning,
                item_index: Some(self.item_index),
                code: "CONTENT_OVERFLOW".into(),
                message: format!("{field} does not fit its slot at the minimum font size; truncated"),
            });
        }
        let size = fit.font_size;
        let block = fit.lines.len() as f64 * LINE_HEIGHT * size;
        let top = r.y + (r.h - block) / 2.0;
        let cx = r.x + r.w / 2.0;
        let _ = write!(
            self.out,
            r#"<text class="vg-{field}" x="{}" y="{}" font-family="{FONT_FAMILY}" font-size="{}"{} text-anchor="middle" fill="{}">"#,
            num(cx),
            num(top + 0.9 * size),
            num(size),
            if bold { r#" font-weight="bold""# } else { "" },
            self.color,
        );
        for (i, line) in fit.lines.iter().enumerate() {
            let y = top + (0.9 + LINE_HEIGHT * i as f64) * size;
            let _ = write!(self.out, r#"<tspan x="{}" y="{}">{}</tspan>"#, num(cx), num(y), escape_text(line));
        }
        self.out.push_str("</text>");
    }

    fn image(&mut self, reference: &str, r: SlotRect, resolved: bool) {
        let (x, y, w, h) = (num(r.x), num(r.y), num(r.w), num(r.h));
        if resolved {
            let _ = write!(
                self.out,
                r#"<image class="vg-image" x="{x}" y="{y}" width="{w}" height="{h}" preserveAspectRatio="xMidYMid meet" xlink:href="{}"/>"#,
                escape_attr(reference)
            );
        } else {
            self.issues.push(Issue {
                severity: Severity::Warning,
                item_index: Some(self.item_index),
                code: "UNRESOLVED_IMAGE".into(),
                message: format!("image `{reference}` not found; placeholder drawn"),
            });
            let stroke = num((r.w.min(r.h) / 40.0).max(self.min_size / 6.0));
            let _ = write!(
                self.out,
                r#"<g class="vg-image-missing" fill="none" stroke="currentColor" stroke-width="{stroke}"><rect x="{x}" y="{y}" width="{w}" height="{h}"/><path d="M{x} {y}L{} {}M{} {y}L{x} {}"/></g>"#,
                num(r.x + r.w),
                num(r.y + r.h),
                num(r.x + r.w),
                num(r.y + r.h),
            );
        }
    }
}

/// Renders one VG: the design body rotated to face the pivot, with the
/// item's content fitted into the placeholder slots and kept upright.
/// Placeholders the item leaves empty are dropped.
pub fn embed_content(
    design: &VgDesign,
    item: &VgContent,
    transform: &VgTransform,
    canvas: &Canvas,
    style: EmbedStyle,
    image_resolved: bool,
) -> Result<(String, Vec<Issue>), ComposeError> {
    if !design.placeholders().covers(item.signature()) {
        return Err(ComposeError::SignatureMismatch {
            design: design.id.clone(),
            item: transform.item_index,
        });
    }
    let doc = roxmltree::Document::parse(&design.svg_doc).map_err(|e| ComposeError::Svg(e.to_string()))?;
    let root = doc.root_element();
    let (w, h) = design.native_size;
    let [vx, vy, ..] = view_box(root).unwrap_or([0.0, 0.0, w, h]);
    let (cx, cy) = (vx + w / 2.0, vy + h / 2.0);
    let k = transform.unit_scale(design.native_size);
    let center = transform.center_px(canvas);
    let theta = transform.rotation_deg;
    let i = transform.item_index;

    let mut out = String::new();
    let rotate = if theta == 0.0 {
        String::new()
    } else {
        format!(" rotate({})", num(theta))
    };
    let _ = write!(
        out,
        r#"<g id="vg-{i}" class="vg" transform="translate({} {}){rotate} scale({}) translate({} {})" color="{}">"#,
        num(center.x),
        num(center.y),
        num(k),
        num(-cx),
        num(-cy),
        style.fill,
    );
    let prefix = format!("vg{i}-");
    Rewriter {
        prefix: &prefix,
        skip: &|n| n.attribute("id").is_some_and(|id| id.starts_with("ph-")),
    }
    .write_children(root, &mut out);

    if theta == 0.0 {
        out.push_str(r#"<g class="vg-content">"#);
    } else {
        let _ = write!(
            out,
            r#"<g class="vg-content" transform="rotate({} {} {})">"#,
            num(-theta),
            num(cx),
            num(cy)
        );
    }
    let mut issues = Vec::new();
    let mut ctx = Ctx {
        out: &mut out,
        issues: &mut issues,
        item_index: i,
        min_size: MIN_FONT_PX / k,
        color: style.text_color,
    };
    let slots = &design.slots;
    if let (Some(v), Some(r)) = (&item.image_ref, slots.image) {
        ctx.image(v, r, image_resolved);
    }
    if let (Some(v), Some(r)) = (&item.title, slots.title) {
        ctx.text("title", v, r, true, 5.0);
    }
    if let (Some(v), Some(r)) = (&item.label, slots.label) {
        ctx.text("label", v, r, true, 3.0);
    }
    if let (Some(v), Some(r)) = (&item.text, slots.text) {
        ctx.text("text", v, r, false, 10.0);
    }
    out.push_str("</g></g>");
    Ok((out, issues))
}
