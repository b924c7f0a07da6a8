mod common;
mod oracles;

use common::{arch_sketch, center_pivot, content, engine};
use infoforge::assets::ConnectionStyle;
use infoforge::geometry::Canvas;
use infoforge::layout::{EnergyWeights, PivotPlacement, Sketch};
use infoforge::pipeline::{
    BundleRequest, ConnectionChoice, GenerateRequest, Generation, LayoutQuery, RankMethod, Selections,
};
use oracles::check_document;

fn canvas() -> Canvas {
    Canvas::new(1200, 1600).unwrap()
}

fn generate(name: &str, pivot: Option<&PivotPlacement>, sketch: Option<&Sketch>) -> Generation {
    let spec = content(name);
    engine()
        .generate(
            &GenerateRequest {
                content: &spec,
                canvas: &canvas(),
                pivot,
                sketch,
                weights: EnergyWeights::default(),
                seed: 42,
                top_k: 4,
            },
            &|_: &str| true,
        )
        .unwrap()
}

fn layout_ids(g: &Generation) -> Vec<String> {
    g.outputs.iter().map(|o| o.provenance.layout_id.clone()).collect()
}

#[test]
fn use_case_one_yields_four_infographics() {
    let g = generate("use_case_1.md", None, None);
    assert_eq!(g.outputs.len(), 4);
    assert_eq!(g.layouts.method, RankMethod::Energy);
    for o in &g.outputs {
        check_document(&o.svg_doc).unwrap();
        assert_eq!(o.transforms.len(), 4);
        assert!(o.provenance.pivot.is_none());
    }
    let ranked: Vec<&str> = g.layouts.ids().take(4).collect();
    assert_eq!(layout_ids(&g), ranked);
}

#[test]
fn use_case_two_places_five_groups_around_the_pivot() {
    let pv = center_pivot();
    let g = generate("use_case_2.md", Some(&pv), None);
    assert_eq!(g.outputs.len(), 4);
    for o in &g.outputs {
        check_document(&o.svg_doc).unwrap();
        assert_eq!(o.transforms.len(), 5);
        assert!(o.svg_doc.contains(r#"id="pivot-layer""#));
        let layout = engine().store().layout(&o.provenance.layout_id).unwrap();
        assert!(!layout.points.iter().any(|p| pv.bbox.contains(*p)));
    }
}

#[test]
fn use_case_three_stays_within_the_sketch_matches() {
    let pv = center_pivot();
    let sketch = arch_sketch();
    let g = generate("use_case_3.md", Some(&pv), Some(&sketch));
    assert_eq!(g.outputs.len(), 4);
    assert_eq!(g.layouts.method, RankMethod::Sketch);

    let spec = content("use_case_3.md");
    let top4 = engine()
        .recommend_layouts(&LayoutQuery {
            n_vgs: spec.len(),
            canvas: &canvas(),
            pivot: Some(&pv),
            sketch: Some(&sketch),
            weights: EnergyWeights::default(),
            top_k: 4,
        })
        .unwrap();
    let allowed: Vec<&str> = top4.ids().collect();
    assert_eq!(allowed.len(), 4);
    for id in layout_ids(&g) {
        assert!(allowed.contains(&id.as_str()), "{id} not in {allowed:?}");
    }
}

#[test]
fn generation_is_byte_identical_across_runs() {
    let pv = center_pivot();
    let sketch = arch_sketch();
    for (name, pivot, sk) in [
        ("use_case_1.md", None, None),
        ("use_case_2.md", Some(&pv), None),
        ("use_case_3.md", Some(&pv), Some(&sketch)),
    ] {
        let a = generate(name, pivot, sk);
        let b = generate(name, pivot, sk);
        let docs = |g: &Generation| g.outputs.iter().map(|o| o.svg_doc.clone()).collect::<Vec<_>>();
        assert_eq!(docs(&a), docs(&b), "{name}");
        for o in &a.outputs {
            assert_eq!(engine().render(&o.provenance).unwrap().svg_doc, o.svg_doc);
        }
    }
}

fn bundle(selections: &Selections, pivot: Option<&PivotPlacement>) -> infoforge::pipeline::RecommendationBundle {
    let spec = content("use_case_2.md");
    engine()
        .bundle(&BundleRequest {
            content: &spec,
            canvas: &canvas(),
            pivot,
            sketch: None,
            weights: EnergyWeights::default(),
            seed: 5,
            top_k: 30,
            selections,
        })
        .unwrap()
}

#[test]
fn later_selections_leave_layout_ranking_alone() {
    let base = bundle(&Selections::default(), None);
    assert!(base.layouts.scores.len() >= 4);
    let second = base.layouts.scores[1].layout_id.clone();
    let picks = [
        Selections {
            layout_id: Some(second.clone()),
            ..Default::default()
        },
        Selections {
            layout_id: Some(second.clone()),
            vg_design_id: Some("vg-04-card-tx".into()),
            connection: Some(ConnectionChoice {
                style: ConnectionStyle::Regular,
                design_id: None,
            }),
            palette_id: Some("ocean".into()),
        },
    ];
    for sel in &picks {
        let b = bundle(sel, None);
        assert_eq!(b.layouts, base.layouts);
        assert_eq!(b.layout_id, second);
    }
    assert_eq!(base.layout_id, base.layouts.scores[0].layout_id);
}

#[test]
fn pivot_zeroes_overlapping_layouts_in_the_bundle() {
    let pv = center_pivot();
    let b = bundle(&Selections::default(), Some(&pv));
    let mut zeroed = 0;
    for s in &b.layouts.scores {
        let layout = engine().store().layout(&s.layout_id).unwrap();
        let hit = layout.points.iter().any(|p| pv.bbox.contains(*p));
        assert_eq!(s.e_o == 0, hit);
        if hit {
            assert_eq!(s.e_l, 0.0);
            zeroed += 1;
        }
    }
    assert!(zeroed > 0);
    assert_eq!(b.connections.ranking.entries.len(), 5);
    assert!(bundle(&Selections::default(), None)
        .connections
        .ranking
        .entries
        .iter()
        .all(|e| e.style != ConnectionStyle::Pivot));
}

#[test]
fn incomplete_selection_is_reported() {
    let err = engine()
        .complete_selection(
            &Selections {
                layout_id: Some("arch-5".into()),
                ..Default::default()
            },
            false,
        )
        .unwrap_err();
    assert_eq!(err.code(), "SELECTION_INCOMPLETE");
    let done = engine()
        .complete_selection(
            &Selections {
                layout_id: Some("arch-5".into()),
                vg_design_id: Some("vg-04-card-tx".into()),
                ..Default::default()
            },
            false,
        )
        .unwrap();
    assert!(done.connection_style.is_some());
}

#[test]
fn unknown_ids_are_errors() {
    assert_eq!(engine().cluster_of_layout("nope").unwrap_err().code(), "UNKNOWN_ASSET");
    let sig = content("use_case_1.md").union_signature();
    assert_eq!(engine().recommend_vgs(99, sig, 3).unwrap_err().code(), "UNKNOWN_CLUSTER");
}
