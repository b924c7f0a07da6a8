//! Text measurement and fitting with a fixed metrics table, so fitted
//! sizes never depend on installed fonts.

/// Helvetica advance widths for ASCII 32..=126, in 1/1000 em.
const HELVETICA: [u16; 95] = [
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278, 278, // ' '..'/'
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556, // digits
    278, 278, 584, 584, 584, 556, 1015, // ':'..'@'
    667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, // A..M
    722, 778, 667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, // N..Z
    278, 278, 278, 469, 556, 333, // '['..'`'
    556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, // a..m
    556, 556, 556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, // n..z
    334, 260, 334, 584, // '{'..'~'
];
const FALLBACK_WIDTH: u16 = 556;
const BOLD_FACTOR: f64 = 1.05;

pub const LINE_HEIGHT: f64 = 1.2;
pub const ELLIPSIS: char = '\u{2026}';

pub fn char_width(c: char) -> f64 {
    let w = match c as u32 {
        32..=126 => HELVETICA[(c as u32 - 32) as usize],
        0x2026 => 1000,
        _ => FALLBACK_WIDTH,
    };
    f64::from(w) / 1000.0
}

/// Advance width of `s` at font size 1.
pub fn text_width(s: &str, bold: bool) -> f64 {
    let w: f64 = s.chars().map(char_width).sum();
    if bold {
        w * BOLD_FACTOR
    } else {
        w
    }
}

/// Greedy word wrap at font size `size`. Words wider than the line are
/// broken between characters.
pub fn wrap(text: &str, size: f64, max_width: f64, bold: bool) -> Vec<String> {
    let fits = |s: &str| text_width(s, bold) * size <= max_width;
    let mut lines = Vec::new();
    let mut line = String::new();
    for word in text.split_whitespace() {
        let candidate = if line.is_empty() {
            word.to_string()
        } else {
            format!("{line} {word}")
        };
        if fits(&candidate) {
            line = candidate;
            continue;
        }
        if !line.is_empty() {
            lines.push(std::mem::take(&mut line));
        }
        if fits(word) {
            line = word.to_string();
            continue;
        }
        for c in word.chars() {
            let mut next = line.clone();
            next.push(c);
            if !line.is_empty() && !fits(&next) {
                lines.push(std::mem::take(&mut line));
                next = c.to_string();
            }
            line = next;
        }
    }
    if !line.is_empty() {
        lines.push(line);
    }
    lines
}

#[derive(Debug, Clone, PartialEq)]
pub struct FittedText {
    pub font_size: f64,
    pub lines: Vec<String>,
    /// The text did not fit at the minimum size and was cut with an ellipsis.
    pub overflow: bool,
}

fn fits_box(text: &str, size: f64, w: f64, h: f64, bold: bool) -> Option<Vec<String>> {
    let lines = wrap(text, size, w, bold);
    let tall = lines.len() as f64 * LINE_HEIGHT * size;
    let wide = lines.iter().all(|l| text_width(l, bold) * size <= w + 1e-9);
    (tall <= h + 1e-9 && wide).then_some(lines)
}

/// Largest font size in `[min_size, max_size]` at which the wrapped text
/// fits a `w` x `h` box, found by bisection.
pub fn fit_text(text: &str, w: f64, h: f64, min_size: f64, max_size: f64, bold: bool) -> FittedText {
    let max_size = max_size.max(min_size);
    if let Some(lines) = fits_box(text, max_size, w, h, bold) {
        return FittedText {
            font_size: max_size,
            lines,
            overflow: false,
        };
    }
    if let Some(mut best) = fits_box(text, min_size, w, h, bold) {
        let (mut lo, mut hi) = (min_size, max_size);
        for _ in 0..40 {
            let mid = (lo + hi) / 2.0;
            match fits_box(text, mid, w, h, bold) {
                Some(lines) => {
                    lo = mid;
                    best = lines;
                }
                None => hi = mid,
            }
        }
        return FittedText {
            font_size: lo,
            lines: best,
            overflow: false,
        };
    }
    FittedText {
        font_size: min_size,
        lines: truncate(text, min_size, w, h, bold),
        overflow: true,
    }
}

fn truncate(text: &str, size: f64, w: f64, h: f64, bold: bool) -> Vec<String> {
    let max_lines = ((h / (LINE_HEIGHT * size)).floor() as usize).max(1);
    let mut lines = wrap(text, size, w, bold);
    lines.truncate(max_lines);
    let last = lines.pop().unwrap_or_default();
    let mut chars: Vec<char> = last.chars().collect();
    loop {
        let mut s: String = chars.iter().collect::<String>().trim_end().to_string();
        s.push(ELLIPSIS);
        if chars.is_empty() || text_width(&s, bold) * size <= w {
            lines.push(s);
            return lines;
        }
        chars.pop();
    }
}
