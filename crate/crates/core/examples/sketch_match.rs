//! Matches a freehand arch, drawn in canvas pixels, against the corpus.
//!
//! ```text
//! cargo run -p infoforge --example sketch_match -- [n_vgs]
//! ```

use infoforge::assets::load_corpus;
use infoforge::geometry::{Canvas, Point};
use infoforge::layout::{match_sketch, Sketch, SketchSpace};
use std::error::Error;
use std::path::Path;

fn main() -> Result<(), Box<dyn Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(5), |a| a.parse())?;
    let store = load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/sample-pack"))?;
    let canvas = Canvas::new(1200, 1600)?;

    // A wobbly half circle sampled the way a pointer would report it.
    let points: Vec<Point> = (0..=60)
        .map(|i| {
            let t = std::f64::consts::PI * f64::from(i) / 60.0;
            let wobble = 6.0 * (f64::from(i) * 1.7).sin();
            Point::new(600.0 - 450.0 * t.cos() + wobble, 1040.0 - 480.0 * t.sin())
        })
        .collect();
    let sketch = Sketch {
        points,
        space: SketchSpace::CanvasPx,
    };
    let matches = match_sketch(&store, &sketch.polyline(&canvas)?, n, 5, None)?;

    println!("estimated VG positions:");
    for p in &matches.estimated_points {
        println!("  ({:.3}, {:.3})", p.x, p.y);
    }
    println!("nearest layouts:");
    for m in &matches.ranked {
        println!("  {:<18} {:.4}", m.layout_id, m.distance);
    }
    Ok(())
}
