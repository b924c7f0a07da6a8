//! Markdown content specification.
//!
//! The accepted grammar is small on purpose:
//!
//! ```text
//! # Infographic title
//! - title: First item
//!   text: A paragraph of body text
//!   label: 2021
//!   image: images/first.png
//! - Second item          <- a bare first line is the title
//!   text: ...
//! ```
//!
//! Only top-level `-`, `*` or `+` bullets start an item. Indented lines
//! inside an item must be `key: value` with one of the keys `title`,
//! `text`, `label`, `image`. Blank lines and prose outside the list are
//! ignored.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_ITEMS: usize = 32;
pub const MAX_SHORT_FIELD: usize = 120;
pub const MAX_TEXT_FIELD: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContentError {
    #[error("content has no list items")]
    EmptySpec,
    #[error("line {line}: {reason}")]
    MalformedItem { line: usize, reason: String },
    #[error("item {item}: field `{field}` is {len} chars, limit is {limit}")]
    OversizeField {
        item: usize,
        field: &'static str,
        len: usize,
        limit: usize,
    },
    #[error("content has {0} items, limit is {MAX_ITEMS}")]
    TooManyItems(usize),
}

/// One bullet: the content of a single visual group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VgContent {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_ref: Option<String>,
}

impl VgContent {
    pub fn signature(&self) -> ComponentSignature {
        signature_of(self)
    }

    pub fn is_empty(&self) -> bool {
        self.title.is_none() && self.text.is_none() && self.label.is_none() && self.image_ref.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContentSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infographic_title: Option<String>,
    pub items: Vec<VgContent>,
}

/// Which of the four VG components are present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentSignature {
    #[serde(default)]
    pub has_title: bool,
    #[serde(default)]
    pub has_text: bool,
    #[serde(default)]
    pub has_label: bool,
    #[serde(default)]
    pub has_image: bool,
}

impl ComponentSignature {
    pub const ALL: ComponentSignature = ComponentSignature {
        has_title: true,
        has_text: true,
        has_label: true,
        has_image: true,
    };

    pub fn union(self, other: ComponentSignature) -> ComponentSignature {
        ComponentSignature {
            has_title: self.has_title || other.has_title,
            has_text: self.has_text || other.has_text,
            has_label: self.has_label || other.has_label,
            has_image: self.has_image || other.has_image,
        }
    }

    /// `true` when every component required by `required` is available here.
    pub fn covers(self, required: ComponentSignature) -> bool {
        (!required.has_title || self.has_title)
            && (!required.has_text || self.has_text)
            && (!required.has_label || self.has_label)
            && (!required.has_image || self.has_image)
    }

    pub fn is_empty(self) -> bool {
        !(self.has_title || self.has_text || self.has_label || self.has_image)
    }
}

pub fn signature_of(item: &VgContent) -> ComponentSignature {
    ComponentSignature {
        has_title: item.title.is_some(),
        has_text: item.text.is_some(),
        has_label: item.label.is_some(),
        has_image: item.image_ref.is_some(),
    }
}

impl ContentSpec {
    /// Union of all item signatures; one VG design serves every item.
    pub fn union_signature(&self) -> ComponentSignature {
        self.items
            .iter()
            .fold(ComponentSignature::default(), |acc, it| acc.union(it.signature()))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Renders back to the accepted grammar; `parse_markdown` of the result
    /// yields an equal spec.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.infographic_title {
            out.push_str("# ");
            out.push_str(t);
            out.push_str("\n\n");
        }
        for item in &self.items {
            let mut first = true;
            for (key, val) in [
                ("title", &item.title),
                ("text", &item.text),
                ("label", &item.label),
                ("image", &item.image_ref),
            ] {
                if let Some(v) = val {
                    out.push_str(if first { "- " } else { "  " });
                    out.push_str(key);
                    out.push_str(": ");
                    out.push_str(v);
                    out.push('\n');
                    first = false;
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Field {
    Title,
    Text,
    Label,
    Image,
}

fn field_for(key: &str) -> Option<Field> {
    match key {
        "title" => Some(Field::Title),
        "text" => Some(Field::Text),
        "label" => Some(Field::Label),
        "image" => Some(Field::Image),
        _ => None,
    }
}

/// Splits `key: value` when `key` looks like an identifier.
fn split_key(line: &str) -> Option<(&str, &str)> {
    let (key, rest) = line.split_once(':')?;
    if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c == '_') {
        return None;
    }
    Some((key, rest.trim()))
}

fn set_field(item: &mut VgContent, field: Field, value: &str, line: usize) -> Result<(), ContentError> {
    if value.is_empty() {
        return Err(ContentError::MalformedItem {
            line,
            reason: "empty value".into(),
        });
    }
    let slot = match field {
        Field::Title => &mut item.title,
        Field::Text => &mut item.text,
        Field::Label => &mut item.label,
        Field::Image => &mut item.image_ref,
    };
    if slot.is_some() {
        return Err(ContentError::MalformedItem {
            line,
            reason: "duplicate key".into(),
        });
    }
    *slot = Some(value.to_string());
    Ok(())
}

fn bullet(line: &str) -> Option<&str> {
    for marker in ["- ", "* ", "+ "] {
        if let Some(rest) = line.strip_prefix(marker) {
            return Some(rest);
        }
    }
    if matches!(line, "-" | "*" | "+") {
        return Some("");
    }
    None
}

pub fn parse_markdown(source: &str) -> Result<ContentSpec, ContentError> {
    let mut spec = ContentSpec::default();
    // (line number of the bullet, item under construction)
    let mut current: Option<(usize, VgContent)> = None;

    let finish = |cur: Option<(usize, VgContent)>, spec: &mut ContentSpec| -> Result<(), ContentError> {
        if let Some((line, item)) = cur {
            if item.is_empty() {
                return Err(ContentError::MalformedItem {
                    line,
                    reason: "list item has no content".into(),
                });
            }
            spec.items.push(item);
        }
        Ok(())
    };

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(' ') || line.starts_with('\t');

        if !indented {
            if let Some(rest) = line.strip_prefix("# ") {
                finish(current.take(), &mut spec)?;
                if spec.infographic_title.is_none() {
                    spec.infographic_title = Some(rest.trim().to_string());
                }
                continue;
            }
            if let Some(rest) = bullet(line) {
                finish(current.take(), &mut spec)?;
                let mut item = VgContent::default();
                let rest = rest.trim();
                if !rest.is_empty() {
                    match split_key(rest) {
                        Some((key, value)) => match field_for(key) {
                            Some(f) => set_field(&mut item, f, value, line_no)?,
                            None => {
                                return Err(ContentError::MalformedItem {
                                    line: line_no,
                                    reason: format!("unknown key `{key}`"),
                                })
                            }
                        },
                        None => set_field(&mut item, Field::Title, rest, line_no)?,
                    }
                }
                current = Some((line_no, item));
                continue;
            }
            // prose outside the list ends the current item
            finish(current.take(), &mut spec)?;
            continue;
        }

        let Some((_, item)) = current.as_mut() else {
            continue;
        };
        let body = line.trim();
        match split_key(body) {
            Some((key, value)) => match field_for(key) {
                Some(f) => set_field(item, f, value, line_no)?,
                None => {
                    return Err(ContentError::MalformedItem {
                        line: line_no,
                        reason: format!("unknown key `{key}`"),
                    })
                }
            },
            None => {
                return Err(ContentError::MalformedItem {
                    line: line_no,
                    reason: "expected `key: value`".into(),
                })
            }
        }
    }
    finish(current.take(), &mut spec)?;

    check_limits(&spec)?;
    Ok(spec)
}

fn check_limits(spec: &ContentSpec) -> Result<(), ContentError> {
    if spec.items.is_empty() {
        return Err(ContentError::EmptySpec);
    }
    if spec.items.len() > MAX_ITEMS {
        return Err(ContentError::TooManyItems(spec.items.len()));
    }
    for (i, item) in spec.items.iter().enumerate() {
        for (field, val, limit) in [
            ("title", &item.title, MAX_SHORT_FIELD),
            ("label", &item.label, MAX_SHORT_FIELD),
            ("text", &item.text, MAX_TEXT_FIELD),
        ] {
            if let Some(v) = val {
                let len = v.chars().count();
                if len > limit {
                    return Err(ContentError::OversizeField {
                        item: i,
                        field,
                        len,
                        limit,
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub severity: Severity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item_index: Option<usize>,
    pub code: String,
    pub message: String,
}

/// Answers whether an image reference can be loaded.
pub trait AssetResolver {
    fn resolves(&self, reference: &str) -> bool;
}

/// Resolves references as filesystem paths relative to a base directory.
/// URLs are accepted without fetching.
#[derive(Debug, Clone)]
pub struct FsResolver {
    pub base: std::path::PathBuf,
}

impl AssetResolver for FsResolver {
    fn resolves(&self, reference: &str) -> bool {
        if reference.starts_with("http://") || reference.starts_with("https://") {
            return true;
        }
        self.base.join(reference).is_file()
    }
}

impl<F: Fn(&str) -> bool> AssetResolver for F {
    fn resolves(&self, reference: &str) -> bool {
        self(reference)
    }
}

/// Reports problems as data. Dead image references are warnings: the
/// composer draws a placeholder glyph for them.
pub fn validate_spec(spec: &ContentSpec, assets: &dyn AssetResolver) -> Vec<Issue> {
    let mut issues = Vec::new();
    if spec.items.is_empty() {
        issues.push(Issue {
            severity: Severity::Error,
            item_index: None,
            code: "EMPTY_SPEC".into(),
            message: ContentError::EmptySpec.to_string(),
        });
        return issues;
    }
    if let Err(e) = check_limits(spec) {
        let item_index = match &e {
            ContentError::OversizeField { item, .. } => Some(*item),
            _ => None,
        };
        issues.push(Issue {
            severity: Severity::Error,
            item_index,
            code: "LIMIT".into(),
            message: e.to_string(),
        });
    }
    for (i, item) in spec.items.iter().enumerate() {
        if item.is_empty() {
            issues.push(Issue {
                severity: Severity::Error,
                item_index: Some(i),
                code: "EMPTY_ITEM".into(),
                message: "item has no content".into(),
            });
        }
        if let Some(img) = &item.image_ref {
            if !assets.resolves(img) {
                issues.push(Issue {
                    severity: Severity::Warning,
                    item_index: Some(i),
                    code: "UNRESOLVED_IMAGE".into(),
                    message: format!("image `{img}` not found; a placeholder will be drawn"),
                });
            }
        }
    }
    issues
}
