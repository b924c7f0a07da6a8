//! Energy ranking of five-point layouts, with and without a pivot graphic.
//!
//! ```text
//! cargo run -p infoforge --example rank_layouts -- [alpha]
//! ```

use infoforge::assets::load_corpus;
use infoforge::geometry::{BBox, Canvas};
use infoforge::layout::{rank_layouts, EnergyWeights, PivotPlacement, RankOptions};
use std::error::Error;
use std::path::Path;

fn main() -> Result<(), Box<dyn Error>> {
    let alpha: f64 = std::env::args().nth(1).map_or(Ok(0.5), |a| a.parse())?;
    let store = load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/sample-pack"))?;
    let canvas = Canvas::new(1200, 1600)?;
    let weights = EnergyWeights::new(alpha)?;
    let pivot = PivotPlacement::new(BBox::new(0.08, 0.06, 0.3, 0.2)?);

    for (label, pv) in [("no pivot", None), ("pivot in the upper left", Some(&pivot))] {
        let ranked = rank_layouts(&store, &canvas, pv, 5, weights, 8, RankOptions::default())?;
        println!("{label} (alpha {alpha})");
        println!("  {:<18} {:>3} {:>7} {:>7} {:>7}", "layout", "e_o", "e_c", "unif", "e_l");
        for s in ranked {
            println!(
                "  {:<18} {:>3} {:>7.4} {:>7.4} {:>7.4}",
                s.layout_id, s.e_o, s.e_c, s.uniformity, s.e_l
            );
        }
    }
    Ok(())
}
