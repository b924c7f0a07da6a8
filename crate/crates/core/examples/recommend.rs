//! Walks the three recommendation stages for the first use case: layouts,
//! then VG designs and connection styles for the chosen layout's cluster,
//! then palettes.
//!
//! ```text
//! cargo run -p infoforge --example recommend
//! ```

use infoforge::content::parse_markdown;
use infoforge::geometry::Canvas;
use infoforge::layout::EnergyWeights;
use infoforge::pipeline::{BundleRequest, Engine, Selections};
use std::error::Error;
use std::path::Path;

fn main() -> Result<(), Box<dyn Error>> {
    let here = Path::new(env!("CARGO_MANIFEST_DIR"));
    let engine = Engine::open(&here.join("assets/sample-pack"))?;
    let content = parse_markdown(&std::fs::read_to_string(here.join("tests/fixtures/use_case_1.md"))?)?;
    let canvas = Canvas::new(1200, 1600)?;

    let bundle = engine.bundle(&BundleRequest {
        content: &content,
        canvas: &canvas,
        pivot: None,
        sketch: None,
        weights: EnergyWeights::default(),
        seed: 7,
        top_k: 5,
        selections: &Selections::default(),
    })?;

    println!("layouts for {} items:", content.len());
    for s in &bundle.layouts.scores {
        println!("  {:<18} {:.4}", s.layout_id, s.e_l);
    }
    println!("following {} (cluster {}):", bundle.layout_id, bundle.cluster_id);
    println!("  VG designs{}:", if bundle.vgs.relaxed { " (relaxed)" } else { "" });
    for v in &bundle.vgs.entries {
        println!("    {:<18} {:.4}", v.id, v.score);
    }
    println!("  connection styles:");
    for e in &bundle.connections.ranking.entries {
        let designs = bundle
            .connections
            .designs
            .iter()
            .find(|d| d.style == e.style)
            .map(|d| d.design_ids.join(", "))
            .unwrap_or_default();
        println!("    {:<10} {:.4}  {designs}", e.style.as_str(), e.score);
    }
    println!("palettes:");
    for p in &bundle.palettes {
        println!("  {:<10} min contrast {:.2}", p.palette_id, p.min_contrast);
    }
    Ok(())
}
