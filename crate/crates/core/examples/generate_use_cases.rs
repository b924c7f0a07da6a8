//! End-to-end generation for the three bundled use cases.
//!
//! ```text
//! cargo run -p infoforge --example generate_use_cases -- [out-dir]
//! ```

use infoforge::content::{parse_markdown, FsResolver};
use infoforge::geometry::Canvas;
use infoforge::layout::{EnergyWeights, PivotPlacement, Sketch};
use infoforge::pipeline::{Engine, GenerateRequest};
use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};

fn main() -> Result<(), Box<dyn Error>> {
    let here = Path::new(env!("CARGO_MANIFEST_DIR"));
    let fixtures = here.join("tests/fixtures");
    let out: PathBuf = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("infoforge-use-cases"), PathBuf::from);
    fs::create_dir_all(&out)?;

    let engine = Engine::open(&here.join("assets/sample-pack"))?;
    let canvas = Canvas::new(1200, 1600)?;
    let pivot: PivotPlacement = serde_json::from_str(&fs::read_to_string(fixtures.join("pivot_center.json"))?)?;
    let sketch: Sketch = serde_json::from_str(&fs::read_to_string(fixtures.join("sketch_arch.json"))?)?;
    let resolver = FsResolver { base: fixtures.clone() };

    let cases = [
        ("use_case_1", None, None),
        ("use_case_2", Some(&pivot), None),
        ("use_case_3", Some(&pivot), Some(&sketch)),
    ];
    for (name, pivot, sketch) in cases {
        let content = parse_markdown(&fs::read_to_string(fixtures.join(format!("{name}.md")))?)?;
        let generation = engine.generate(
            &GenerateRequest {
                content: &content,
                canvas: &canvas,
                pivot,
                sketch,
                weights: EnergyWeights::default(),
                seed: 42,
                top_k: 4,
            },
            &resolver,
        )?;
        println!("{name}: {} items", content.len());
        for (i, g) in generation.outputs.iter().enumerate() {
            let p = &g.provenance;
            let file = out.join(format!("{name}-{}.svg", i + 1));
            fs::write(&file, &g.svg_doc)?;
            println!(
                "  #{} {:<18} vg={:<18} connection={:<10} palette={}",
                i + 1,
                p.layout_id,
                p.vg_design_id,
                p.connection_style,
                p.palette_id
            );
        }
        for s in &generation.skipped {
            println!("  skipped {} ({})", s.layout_id, s.code);
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}
