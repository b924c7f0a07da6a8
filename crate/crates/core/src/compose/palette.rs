use crate::assets::Palette;
use crate::color::{contrast_ratio, Rgb};
use serde::{Deserialize, Serialize};

/// Series colors must reach this contrast against the background.
pub const MIN_CONTRAST: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaletteChoice {
    pub palette_id: String,
    pub min_contrast: f64,
    pub mean_contrast: f64,
    /// False when no palette cleared [`MIN_CONTRAST`] and this is only the
    /// best of the rest.
    pub accessible: bool,
}

pub fn palette_contrast(p: &Palette, background: Rgb) -> (f64, f64) {
    let ratios: Vec<f64> = p.series.iter().map(|&c| contrast_ratio(c, background)).collect();
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    (min, mean)
}

/// Accessible palettes by mean contrast (ties to the lower id), then the
/// inaccessible ones in the same order.
pub fn rank_palettes(palettes: &[Palette], background: Rgb) -> Vec<PaletteChoice> {
    let mut out: Vec<PaletteChoice> = palettes
        .iter()
        .map(|p| {
            let (min, mean) = palette_contrast(p, background);
            PaletteChoice {
                palette_id: p.id.clone(),
                min_contrast: min,
                mean_contrast: mean,
                accessible: min >= MIN_CONTRAST,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.accessible
            .cmp(&a.accessible)
            .then(b.mean_contrast.total_cmp(&a.mean_contrast))
            .then_with(|| a.palette_id.cmp(&b.palette_id))
    });
    out
}

/// `None` only for an empty palette list. A result with `accessible ==
/// false` is the fallback for a background no palette suits.
pub fn select_palette(palettes: &[Palette], background: Rgb) -> Option<PaletteChoice> {
    rank_palettes(palettes, background).into_iter().next()
}

/// Whichever of `preferred`, near-black and white reads best on `bg`,
/// keeping `preferred` when it already meets 4.5:1.
pub fn readable_on(bg: Rgb, preferred: Rgb) -> Rgb {
    if contrast_ratio(preferred, bg) >= 4.5 {
        return preferred;
    }
    let dark = Rgb(0x11, 0x11, 0x11);
    let light = Rgb(255, 255, 255);
    if contrast_ratio(dark, bg) >= contrast_ratio(light, bg) {
        dark
    } else {
        light
    }
}
