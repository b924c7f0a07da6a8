//! Rebuilds the cluster model and both TF-IDF indices for a corpus and
//! prints the cluster sizes and the rarest connection designs.
//!
//! ```text
//! cargo run --release -p infoforge --example build_index -- [corpus-dir] [out-dir]
//! ```

use infoforge::assets::load_corpus;
use infoforge::index::{build_indices, write_indices, IndexConfig};
use std::collections::BTreeMap;
use std::error::Error;
use std::path::{Path, PathBuf};

fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let corpus = args
        .next()
        .map_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/sample-pack"), PathBuf::from);
    let store = load_corpus(&corpus)?;
    let config = IndexConfig::default();
    let indices = build_indices(&store, &config)?;
    let model = &indices.cluster_model;

    let mut sizes: BTreeMap<u32, Vec<&str>> = BTreeMap::new();
    for m in &model.members {
        sizes.entry(m.cluster).or_default().push(&m.layout_id);
    }
    println!("{} layouts in {} clusters (seed {})", model.members.len(), model.k(), config.seed);
    for (c, ids) in &sizes {
        println!("  c{c:<2} {:>3}  e.g. {}", ids.len(), ids[0]);
    }
    let d = &model.diagnostics;
    if d.insufficient_density {
        println!("  density-based regions were too few; k-means seeded the rest");
    }
    for c in 0..model.k() as u32 {
        if let Some((id, s)) = indices.c_vif.rank(c).first() {
            println!("  top connection style for c{c}: {id} ({s:.3})");
        }
    }

    if let Some(out) = args.next() {
        write_indices(Path::new(&out), &indices)?;
        println!("wrote {out}");
    }
    Ok(())
}
