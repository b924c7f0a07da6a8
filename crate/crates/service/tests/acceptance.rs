//! Acceptance runner. One line per criterion; exits non-zero if any fails.
//!
//! `cargo test -p infoforge-service --test acceptance`

mod common;
#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use axum::http::{Method, StatusCode};
use common::{app, engine, fixtures, send, send_raw};
use infoforge::assets::{AssetStore, ConnectionTable};
use infoforge::compose::Provenance;
use infoforge::geometry::{BBox, Canvas, Point, Polyline};
use infoforge::index::{build_cluster_model, build_indices, build_tfidf_index, write_indices, IndexConfig};
use infoforge::layout::{
    energy_coverage, energy_uniformity, match_sketch, rank_layouts, score_points, EnergyWeights, PivotPlacement,
    RankOptions, Sketch,
};
use infoforge::pipeline::{GenerateRequest, Generation, LayoutQuery};
use infoforge::content::parse_markdown;
use oracles::blobs::{blob_layouts, cluster_classes, purity, CLASSES};
use oracles::energy::{inversions, random_layouts, ranking};
use oracles::tfidf::{hand_corpus, hand_max_error, mutation_run};
use oracles::{check_document, run_geometry_cases, trace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde_json::json;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn energy_suite() -> Outcome {
    let start = Instant::now();

    let pivot = PivotPlacement::new(BBox::new(0.4, 0.4, 0.2, 0.2).unwrap());
    let s = score_points("gate", &[p(0.1, 0.1), p(0.5, 0.5), p(0.9, 0.9)], Some(&pivot), EnergyWeights::default());
    ensure(s.e_o == 0 && s.e_l == 0.0, || format!("gate left e_l = {}", s.e_l))?;

    let corners = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
    let quarter = [p(0.25, 0.25), p(0.75, 0.25), p(0.75, 0.75), p(0.25, 0.75)];
    let line = [p(0.1, 0.1), p(0.5, 0.5), p(0.9, 0.9)];
    let cov = [
        energy_coverage(&corners, false),
        energy_coverage(&quarter, false),
        energy_coverage(&line, false),
    ];
    let want = [1.0, 0.25, 0.0];
    ensure(cov.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12), || {
        format!("coverage {cov:?}")
    })?;

    let ring: Vec<Point> = (0..7)
        .map(|i| {
            let a = i as f64 * std::f64::consts::TAU / 7.0;
            p(0.5 + 0.3 * a.cos(), 0.5 + 0.3 * a.sin())
        })
        .collect();
    let u = energy_uniformity(&ring, p(0.5, 0.5)).uniformity;
    ensure((u - 1.0).abs() < 1e-12, || format!("ring uniformity {u}"))?;

    let layouts = random_layouts(2024, 20, 5);
    let store = AssetStore::from_parts(layouts.clone(), vec![], vec![], vec![], vec![], ConnectionTable::new())
        .map_err(|e| format!("{e:?}"))?;
    let canvas = Canvas::new(1200, 1600).unwrap();
    let pv = PivotPlacement::new(BBox::new(0.4, 0.35, 0.2, 0.25).unwrap());
    let mut total = 0;
    for alpha in [0.0, 0.25, 0.5, 1.0] {
        for pivot in [None, Some(&pv)] {
            let ranked = rank_layouts(
                &store,
                &canvas,
                pivot,
                5,
                EnergyWeights::new(alpha).unwrap(),
                20,
                RankOptions::default(),
            )
            .map_err(|e| e.to_string())?;
            let expected = ranking(&layouts, pivot.map(|p| &p.bbox), alpha);
            let got: Vec<&str> = ranked.iter().map(|s| s.layout_id.as_str()).collect();
            let want: Vec<&str> = expected.iter().map(|e| e.0.as_str()).collect();
            ensure(got.len() == 20, || format!("ranked {} of 20", got.len()))?;
            total += inversions(&got, &want);
        }
    }
    ensure(total == 0, || format!("{total} rank inversions"))?;
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("0 inversions over 8 rankings of 20 layouts, {took:.2?}"))
}

fn top1(store: &AssetStore, stroke: Vec<Point>, n: usize) -> Result<String, String> {
    let line = Polyline::new(stroke).map_err(|e| e.to_string())?;
    let m = match_sketch(store, &line, n, 1, None).map_err(|e| e.to_string())?;
    Ok(m.ranked.into_iter().next().map(|r| r.layout_id).unwrap_or_default())
}

fn sketch_retrieval() -> Outcome {
    let engine = engine();
    let store = engine.store();
    let start = Instant::now();
    let layouts = store.layouts();
    let mut clean = 0;
    let mut noisy = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let noise = Normal::new(0.0, 0.01).unwrap();
    for l in layouts {
        let stroke = trace(&l.points, 0.005);
        if top1(store, stroke.clone(), l.len())? == l.id {
            clean += 1;
        }
        let jittered = stroke
            .into_iter()
            .map(|q| p(q.x + noise.sample(&mut rng), q.y + noise.sample(&mut rng)))
            .map(|q| p(q.x.clamp(0.0, 1.0), q.y.clamp(0.0, 1.0)))
            .collect();
        if top1(store, jittered, l.len())? == l.id {
            noisy += 1;
        }
    }
    let n = layouts.len();
    ensure(clean == n, || format!("noiseless {clean}/{n}"))?;
    ensure(noisy * 10 >= n * 9, || format!("jittered {noisy}/{n}"))?;
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("noiseless {clean}/{n}, jittered {noisy}/{n}, {took:.2?}"))
}

fn tfidf_oracle() -> Outcome {
    let idx = build_tfidf_index(hand_corpus()).map_err(|e| e.to_string())?;
    let err = hand_max_error(&idx);
    ensure(err < 1e-9, || format!("max error {err:e}"))?;
    let steps = mutation_run(17, 1000)?;
    ensure(steps == 1000, || format!("{steps} mutations checked"))?;
    Ok(format!("max error {err:.1e}, rarity held over {steps} mutations"))
}

fn clustering() -> Outcome {
    let model = build_cluster_model(&blob_layouts(), &IndexConfig::default()).map_err(|e| e.to_string())?;
    let clusters = cluster_classes(&model);
    ensure(model.k() == CLASSES && clusters.len() == CLASSES, || {
        format!("k = {}, {} populated clusters", model.k(), clusters.len())
    })?;
    let pur = purity(&model);
    ensure(pur == 1.0, || format!("purity {pur}"))?;

    let engine = engine();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let built = build_indices(engine.store(), &IndexConfig::default()).map_err(|e| e.to_string())?;
        write_indices(d.path(), &built).map_err(|e| e.to_string())?;
    }
    let mut files = 0;
    for entry in std::fs::read_dir(dirs[0].path()).unwrap() {
        let name = entry.unwrap().file_name();
        let a = std::fs::read(dirs[0].path().join(&name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(&name)).unwrap();
        ensure(a == b, || format!("{} differs between runs", name.to_string_lossy()))?;
        files += 1;
    }
    ensure(files >= 3, || format!("only {files} index files written"))?;
    Ok(format!("{CLASSES} clusters, purity {pur}, {files} index files identical"))
}

fn composition() -> Outcome {
    let r = run_geometry_cases(engine().store(), 500, 11);
    ensure(r.passed(), || format!("{r:?}"))?;
    Ok(format!(
        "{} cases, {} placed, max facing error {:.1e} rad, overlap {}",
        r.cases, r.placed, r.max_facing_error, r.overlap_area
    ))
}

fn fixture<T: serde::de::DeserializeOwned>(name: &str) -> T {
    serde_json::from_str(&std::fs::read_to_string(fixtures().join(name)).unwrap()).unwrap()
}

fn run_use_case(name: &str, pivot: Option<&PivotPlacement>, sketch: Option<&Sketch>) -> Result<Generation, String> {
    let content = parse_markdown(&std::fs::read_to_string(fixtures().join(name)).unwrap()).map_err(|e| e.to_string())?;
    engine()
        .generate(
            &GenerateRequest {
                content: &content,
                canvas: &Canvas::new(1200, 1600).unwrap(),
                pivot,
                sketch,
                weights: EnergyWeights::default(),
                seed: 42,
                top_k: 4,
            },
            &|_: &str| true,
        )
        .map_err(|e| e.to_string())
}

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let pivot: PivotPlacement = fixture("pivot_center.json");
    let sketch: Sketch = fixture("sketch_arch.json");
    let cases = [
        ("use_case_1.md", None, None),
        ("use_case_2.md", Some(&pivot), None),
        ("use_case_3.md", Some(&pivot), Some(&sketch)),
    ];
    for (name, pv, sk) in cases {
        let g = run_use_case(name, pv, sk)?;
        ensure(g.outputs.len() == 4, || format!("{name}: {} outputs", g.outputs.len()))?;
        for o in &g.outputs {
            check_document(&o.svg_doc).map_err(|e| format!("{name}: {e}"))?;
        }
        let again = run_use_case(name, pv, sk)?;
        let same = g.outputs.iter().zip(&again.outputs).all(|(a, b)| a.svg_doc == b.svg_doc);
        ensure(same, || format!("{name}: rerun differs"))?;

        if sk.is_some() {
            let top4 = engine()
                .recommend_layouts(&LayoutQuery {
                    n_vgs: 5,
                    canvas: &Canvas::new(1200, 1600).unwrap(),
                    pivot: pv,
                    sketch: sk,
                    weights: EnergyWeights::default(),
                    top_k: 4,
                })
                .map_err(|e| e.to_string())?;
            let allowed: Vec<&str> = top4.ids().collect();
            for o in &g.outputs {
                let id = o.provenance.layout_id.as_str();
                ensure(allowed.contains(&id), || format!("{name}: {id} not in sketch top-4 {allowed:?}"))?;
            }
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("3 use cases x 4 outputs, reruns identical, {took:.2?}"))
}

fn cli_generate(out: &Path) -> Result<(), String> {
    let fx = |n: &str| fixtures().join(n).display().to_string();
    let o = Command::new(env!("CARGO_BIN_EXE_infoforge"))
        .env_remove("INFOFORGE_CORPUS")
        .args(["generate", "--input", &fx("use_case_3.md"), "--canvas", "1200x1600"])
        .args(["--pivot", "globe@0.38,0.4,0.24,0.2", "--sketch", &fx("sketch_arch.json")])
        .args(["--seed", "42", "--top-k", "4", "--out", out.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())
}

async fn parity() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    cli_generate(dir.path())?;
    let app = app();
    let markdown = std::fs::read_to_string(fixtures().join("use_case_3.md")).unwrap();
    for i in 1..=4 {
        let svg = std::fs::read(dir.path().join(format!("infographic-{i}.svg"))).unwrap();
        let prov_text = std::fs::read_to_string(dir.path().join(format!("infographic-{i}.json"))).unwrap();

        let r = send_raw(&app, Method::POST, "/assemble", Some(prov_text.clone())).await;
        ensure(r.status == StatusCode::OK, || format!("POST /assemble: {} {}", r.status, r.text()))?;
        ensure(r.body == svg, || format!("infographic-{i}: POST /assemble differs"))?;

        // Same choices driven through a session.
        let prov: Provenance = serde_json::from_str(&prov_text).map_err(|e| e.to_string())?;
        let body = json!({
            "markdown": markdown,
            "canvas": prov.canvas,
            "pivot": prov.pivot,
            "alpha": prov.alpha,
            "seed": prov.seed,
        });
        let c = send(&app, Method::POST, "/sessions", Some(body)).await;
        ensure(c.status == StatusCode::CREATED, || c.text())?;
        let id = c.json()["session"]["id"].as_str().unwrap().to_string();
        let patch = json!({"selections": {
            "layout_id": prov.layout_id,
            "vg_design_id": prov.vg_design_id,
            "connection": {"style": prov.connection_style, "design_id": prov.connection_design_id},
            "palette_id": prov.palette_id,
        }});
        let r = send(&app, Method::PATCH, &format!("/sessions/{id}"), Some(patch)).await;
        ensure(r.status == StatusCode::OK, || r.text())?;
        let r = send(&app, Method::POST, &format!("/sessions/{id}/assemble"), None).await;
        ensure(r.status == StatusCode::OK, || r.text())?;
        ensure(r.body == svg, || format!("infographic-{i}: session assemble differs"))?;
    }
    Ok("4 CLI outputs byte-identical to POST /assemble and session assemble".into())
}

fn main() -> ExitCode {
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build().unwrap();
    let criteria: [Criterion; 7] = [
        ("energy functional", Box::new(energy_suite)),
        ("sketch retrieval", Box::new(sketch_retrieval)),
        ("tf-idf oracle", Box::new(tfidf_oracle)),
        ("clustering determinism and purity", Box::new(clustering)),
        ("composition geometry", Box::new(composition)),
        ("end-to-end fixtures", Box::new(end_to_end)),
        ("cli/service parity", Box::new(|| runtime.block_on(parity()))),
    ];
    // Warm the shared engine so timings measure the work, not corpus loading.
    let _ = engine();

    let mut failed = 0;
    for (name, check) in &criteria {
        match std::panic::catch_unwind(std::panic::AssertUnwindSafe(check)) {
            Ok(Ok(detail)) => println!("PASS  {name}: {detail}"),
            Ok(Err(detail)) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL  {name}: panicked");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
