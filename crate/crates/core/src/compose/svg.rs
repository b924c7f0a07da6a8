//! Re-serializing design SVGs into the output document.
//!
//! Designs are parsed once and their elements written back with ids given
//! a per-instance prefix, so several copies of one design can share a
//! document. Foreign-namespace elements and design metadata are dropped.

use std::fmt::Write;

const SVG_NS: &str = "http://www.w3.org/2000/svg";
const XLINK_NS: &str = "http://www.w3.org/1999/xlink";
const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

pub fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
    out
}

pub fn escape_attr(s: &str) -> String {
    escape_text(s).replace('"', "&quot;")
}

/// Fixed three-decimal formatting with trailing zeros trimmed; `-0` never
/// appears.
pub fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Rewrites local references (`url(#a)`, `#a`) to prefixed ids.
fn prefix_refs(value: &str, prefix: &str) -> String {
    value.replace("url(#", &format!("url(#{prefix}"))
}

fn is_svg(node: &roxmltree::Node) -> bool {
    matches!(node.tag_name().namespace(), None | Some(SVG_NS))
}

pub struct Rewriter<'a> {
    pub prefix: &'a str,
    /// Elements for which this returns true are omitted with their subtree.
    pub skip: &'a dyn Fn(&roxmltree::Node) -> bool,
}

impl Rewriter<'_> {
    pub fn write_children(&self, node: roxmltree::Node, out: &mut String) {
        for child in node.children() {
            self.write_node(child, out);
        }
    }

    fn write_node(&self, node: roxmltree::Node, out: &mut String) {
        if node.is_text() {
            let t = node.text().unwrap_or_default();
            if !t.trim().is_empty() {
                out.push_str(&escape_text(t));
            }
            return;
        }
        if !node.is_element() || !is_svg(&node) || (self.skip)(&node) {
            return;
        }
        let name = node.tag_name().name();
        if name == "metadata" {
            return;
        }
        out.push('<');
        out.push_str(name);
        self.write_attrs(node, out);
        if node.has_children() && node.children().any(|c| c.is_element() || c.is_text()) {
            out.push('>');
            self.write_children(node, out);
            let _ = write!(out, "</{name}>");
        } else {
            out.push_str("/>");
        }
    }

    pub fn write_attrs(&self, node: roxmltree::Node, out: &mut String) {
        for a in node.attributes() {
            let qname = match a.namespace() {
                None => a.name().to_string(),
                Some(XLINK_NS) => format!("xlink:{}", a.name()),
                Some(XML_NS) => format!("xml:{}", a.name()),
                Some(_) => continue,
            };
            let value = if a.name() == "id" && a.namespace().is_none() {
                format!("{}{}", self.prefix, a.value())
            } else if a.name() == "href" && a.value().starts_with('#') {
                format!("#{}{}", self.prefix, &a.value()[1..])
            } else {
                prefix_refs(a.value(), self.prefix)
            };
            let _ = write!(out, " {qname}=\"{}\"", escape_attr(&value));
        }
    }
}

/// The `viewBox` of a root `<svg>`, falling back to its width and height.
pub fn view_box(root: roxmltree::Node) -> Option<[f64; 4]> {
    if let Some(vb) = root.attribute("viewBox") {
        let v: Vec<f64> = vb
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .filter_map(|s| s.parse().ok())
            .collect();
        if v.len() == 4 && v[2] > 0.0 && v[3] > 0.0 {
            return Some([v[0], v[1], v[2], v[3]]);
        }
    }
    let dim = |n: &str| {
        root.attribute(n)
            .map(|s| s.trim_end_matches("px"))
            .and_then(|s| s.parse::<f64>().ok())
    };
    match (dim("width"), dim("height")) {
        (Some(w), Some(h)) if w > 0.0 && h > 0.0 => Some([0.0, 0.0, w, h]),
        _ => None,
    }
}
