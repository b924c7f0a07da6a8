//! Exact t-SNE for small corpora.
//!
//! Gradient descent with early exaggeration, momentum and per-coordinate
//! gains. Identical input vectors are embedded once and share a planar
//! point. Everything runs sequentially in `f64`, so a fixed seed gives
//! bit-identical output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TsneParams {
    pub perplexity: f64,
    pub iterations: usize,
    pub learning_rate: f64,
    pub early_exaggeration: f64,
    pub exaggeration_iterations: usize,
}

impl Default for TsneParams {
    fn default() -> Self {
        TsneParams {
            perplexity: 15.0,
            iterations: 1000,
            learning_rate: 100.0,
            early_exaggeration: 12.0,
            exaggeration_iterations: 250,
        }
    }
}

pub fn embed_2d(vectors: &[Vec<f64>], params: &TsneParams, seed: u64) -> Vec<[f64; 2]> {
    let (unique, map) = dedupe(vectors);
    let y = tsne(&unique, params, seed);
    map.into_iter().map(|i| y[i]).collect()
}

/// Distinct rows in first-seen order, plus each input's row index.
fn dedupe(vectors: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut unique: Vec<Vec<f64>> = Vec::new();
    let mut map = Vec::with_capacity(vectors.len());
    for v in vectors {
        match unique.iter().position(|u| u == v) {
            Some(i) => map.push(i),
            None => {
                map.push(unique.len());
                unique.push(v.clone());
            }
        }
    }
    (unique, map)
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

fn tsne(x: &[Vec<f64>], params: &TsneParams, seed: u64) -> Vec<[f64; 2]> {
    let n = x.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![[0.0, 0.0]],
        _ => {}
    }
    let p = joint_probabilities(x, params.perplexity);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let init = Normal::new(0.0, 1e-4).expect("valid normal");
    let mut y: Vec<[f64; 2]> = (0..n).map(|_| [init.sample(&mut rng), init.sample(&mut rng)]).collect();
    let mut update = vec![[0.0; 2]; n];
    let mut gains = vec![[1.0; 2]; n];
    let mut q = vec![0.0; n * n];

    for iter in 0..params.iterations {
        let exaggeration = if iter < params.exaggeration_iterations {
            params.early_exaggeration
        } else {
            1.0
        };
        let momentum = if iter < params.exaggeration_iterations { 0.5 } else { 0.8 };

        let mut z = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let d = (y[i][0] - y[j][0]).powi(2) + (y[i][1] - y[j][1]).powi(2);
                let w = 1.0 / (1.0 + d);
                q[i * n + j] = w;
                q[j * n + i] = w;
                z += 2.0 * w;
            }
        }

        for i in 0..n {
            let mut grad = [0.0; 2];
            for j in 0..n {
                if i == j {
                    continue;
                }
                let w = q[i * n + j];
                let f = (exaggeration * p[i * n + j] - w / z) * w;
                grad[0] += 4.0 * f * (y[i][0] - y[j][0]);
                grad[1] += 4.0 * f * (y[i][1] - y[j][1]);
            }
            for d in 0..2 {
                let same_sign = (grad[d] > 0.0) == (update[i][d] > 0.0);
                gains[i][d] = if same_sign {
                    (gains[i][d] * 0.8f64).max(0.01)
                } else {
                    gains[i][d] + 0.2
                };
                update[i][d] = momentum * update[i][d] - params.learning_rate * gains[i][d] * grad[d];
            }
        }
        for i in 0..n {
            y[i][0] += update[i][0];
            y[i][1] += update[i][1];
        }
        let cx = y.iter().map(|p| p[0]).sum::<f64>() / n as f64;
        let cy = y.iter().map(|p| p[1]).sum::<f64>() / n as f64;
        for p in &mut y {
            p[0] -= cx;
            p[1] -= cy;
        }
    }
    y
}

/// Symmetrized affinities `(p_j|i + p_i|j) / 2n` with each conditional
/// bandwidth found by bisection on the entropy. The perplexity is capped at
/// `(n - 1) / 3` so tiny inputs stay well posed.
fn joint_probabilities(x: &[Vec<f64>], perplexity: f64) -> Vec<f64> {
    let n = x.len();
    let perplexity = perplexity.min((n as f64 - 1.0) / 3.0).max(1.0);
    let target = perplexity.ln();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = sq_dist(&x[i], &x[j]);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }

    let mut cond = vec![0.0; n * n];
    for i in 0..n {
        let row = &d[i * n..(i + 1) * n];
        let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
        let mut beta = 1.0;
        let dmin = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| *v)
            .fold(f64::INFINITY, f64::min);
        let mut probs = vec![0.0; n];
        for _ in 0..200 {
            // shifting by the nearest distance keeps exp() from underflowing
            let mut sum = 0.0;
            for (j, (pj, dj)) in probs.iter_mut().zip(row).enumerate() {
                *pj = if j == i { 0.0 } else { (-(dj - dmin) * beta).exp() };
                sum += *pj;
            }
            let mut h = 0.0;
            for (j, pj) in probs.iter_mut().enumerate() {
                if j != i {
                    *pj /= sum;
                    if *pj > 0.0 {
                        h -= *pj * pj.ln();
                    }
                }
            }
            if (h - target).abs() < 1e-5 {
                break;
            }
            if h > target {
                lo = beta;
                beta = if hi.is_finite() { (beta + hi) / 2.0 } else { beta * 2.0 };
            } else {
                hi = beta;
                beta = (beta + lo) / 2.0;
            }
        }
        cond[i * n..(i + 1) * n].copy_from_slice(&probs);
    }

    let mut p = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            p[i * n + j] = ((cond[i * n + j] + cond[j * n + i]) / (2.0 * n as f64)).max(1e-12);
        }
    }
    p
}
