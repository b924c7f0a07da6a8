//! Hand-computed TF-IDF values and a mutation-driven property check.

use infoforge::assets::ClusterId;
use infoforge::index::{build_tfidf_index, TfidfIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub type Docs = BTreeMap<String, BTreeSet<ClusterId>>;

pub fn docs(rows: &[(&str, &[ClusterId])]) -> Docs {
    rows.iter()
        .map(|(id, cs)| (id.to_string(), cs.iter().copied().collect()))
        .collect()
}

/// Ten documents; df is c0=4, c1=3, c2=2, c3=1, c4=5, c5=2.
pub fn hand_corpus() -> Docs {
    docs(&[
        ("a", &[0]),
        ("b", &[0, 1]),
        ("c", &[0, 1, 2]),
        ("d", &[0, 4]),
        ("e", &[1, 4]),
        ("f", &[2, 3]),
        ("g", &[4]),
        ("h", &[4, 5]),
        ("i", &[4]),
        ("j", &[5]),
    ])
}

/// `(document, cluster, score)` worked out by hand for [`hand_corpus`].
pub fn hand_expected() -> Vec<(&'static str, ClusterId, f64)> {
    let ln = f64::ln;
    vec![
        ("a", 0, ln(10.0 / 4.0)),
        ("b", 0, ln(10.0 / 4.0) / 2.0),
        ("b", 1, ln(10.0 / 3.0) / 2.0),
        ("c", 0, ln(10.0 / 4.0) / 3.0),
        ("c", 1, ln(10.0 / 3.0) / 3.0),
        ("c", 2, ln(10.0 / 2.0) / 3.0),
        ("d", 0, ln(10.0 / 4.0) / 2.0),
        ("d", 4, ln(10.0 / 5.0) / 2.0),
        ("e", 1, ln(10.0 / 3.0) / 2.0),
        ("e", 4, ln(10.0 / 5.0) / 2.0),
        ("f", 2, ln(5.0) / 2.0),
        ("f", 3, ln(10.0) / 2.0),
        ("g", 4, ln(2.0)),
        ("h", 4, ln(2.0) / 2.0),
        ("h", 5, ln(5.0) / 2.0),
        ("i", 4, ln(2.0)),
        ("j", 5, ln(5.0)),
    ]
}

/// Largest absolute error against [`hand_expected`], including zero
/// scores for clusters a document does not contain.
pub fn hand_max_error(idx: &TfidfIndex) -> f64 {
    let expected = hand_expected();
    let mut worst: f64 = 0.0;
    for (id, set) in hand_corpus() {
        for c in 0..6 {
            let want = expected
                .iter()
                .find(|(d, k, _)| *d == id && *k == c)
                .map_or(0.0, |e| e.2);
            assert_eq!(set.contains(&c), want != 0.0, "table misses {id}/c{c}");
            worst = worst.max((idx.score(&id, c) - want).abs());
        }
    }
    worst
}

/// Descriptions of every rarity-preference violation in `d`.
pub fn rarity_violations(d: &Docs) -> Vec<String> {
    let idx = build_tfidf_index(d.clone()).expect("non-empty corpus");
    let mut bad = Vec::new();
    for (id, set) in d {
        for &a in set {
            for &b in set {
                if idx.df[&a] < idx.df[&b] && idx.score(id, a) <= idx.score(id, b) {
                    bad.push(format!("{id}: rarer c{a} not above c{b}"));
                }
            }
        }
    }
    for (x, sx) in d {
        for (y, sy) in d {
            for c in sx.intersection(sy) {
                if sx.len() < sy.len() && idx.df[c] < idx.doc_count && idx.score(x, *c) <= idx.score(y, *c) {
                    bad.push(format!("c{c}: narrower {x} not above {y}"));
                }
            }
        }
    }
    bad
}

/// Applies `steps` random edits (add or drop a document, add or drop a
/// cluster) to a seeded corpus, checking the property after each one.
pub fn mutation_run(seed: u64, steps: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Docs::new();
    let mut next = 0usize;
    let mut fresh = |rng: &mut ChaCha8Rng, d: &mut Docs| {
        let size = rng.random_range(1..6);
        let set = (0..size).map(|_| rng.random_range(0..12)).collect();
        d.insert(format!("d{next:04}"), set);
        next += 1;
    };
    for _ in 0..4 {
        fresh(&mut rng, &mut d);
    }
    for step in 0..steps {
        let keys: Vec<String> = d.keys().cloned().collect();
        let pick = keys[rng.random_range(0..keys.len())].clone();
        match rng.random_range(0..4) {
            0 => fresh(&mut rng, &mut d),
            1 if d.len() > 2 => {
                d.remove(&pick);
            }
            2 => {
                d.get_mut(&pick).unwrap().insert(rng.random_range(0..12));
            }
            _ => {
                let set = d.get_mut(&pick).unwrap();
                if set.len() > 1 {
                    let c = *set.iter().nth(rng.random_range(0..set.len())).unwrap();
                    set.remove(&c);
                } else {
                    fresh(&mut rng, &mut d);
                }
            }
        }
        let bad = rarity_violations(&d);
        if !bad.is_empty() {
            return Err(format!("step {step}: {}", bad.join("; ")));
        }
    }
    Ok(steps)
}
