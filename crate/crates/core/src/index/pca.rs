//! PCA through the eigen decomposition of the sample Gram matrix.
//!
//! With far fewer samples than pixels, `X Xᵀ` is cheap to decompose and its
//! eigenvectors map onto the principal axes by `u = Xᵀ v / √λ`. Directions
//! beyond the data rank are completed by Gram–Schmidt so the basis is always
//! orthonormal.

use super::IndexError;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

pub const DEFAULT_COMPONENTS: usize = 50;

/// Mean and basis are stored in single precision; every projection goes
/// through the stored values so a reloaded model projects identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f32>,
    /// One row per component, strongest first.
    pub components: Vec<Vec<f32>>,
    pub explained_variance: Vec<f64>,
}

impl PcaModel {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let centered: Vec<f64> = x.iter().zip(&self.mean).map(|(v, m)| v - f64::from(*m)).collect();
        self.components
            .iter()
            .map(|c| c.iter().zip(&centered).map(|(a, b)| f64::from(*a) * b).sum())
            .collect()
    }

    pub fn reconstruct(&self, coords: &[f64]) -> Vec<f64> {
        let mut out: Vec<f64> = self.mean.iter().map(|m| f64::from(*m)).collect();
        for (c, w) in self.components.iter().zip(coords) {
            for (o, a) in out.iter_mut().zip(c) {
                *o += w * f64::from(*a);
            }
        }
        out
    }
}

pub fn fit_pca(samples: &[Vec<f64>], n_components: usize) -> Result<PcaModel, IndexError> {
    let m = samples.len();
    if m < n_components + 1 {
        return Err(IndexError::TooFewSamples {
            needed: n_components + 1,
            got: m,
        });
    }
    let d = samples[0].len();
    if n_components > d || samples.iter().any(|s| s.len() != d) {
        return Err(IndexError::InvalidInput("sample dimensions disagree".into()));
    }

    let mut mean = vec![0.0; d];
    for s in samples {
        for (acc, v) in mean.iter_mut().zip(s) {
            *acc += v;
        }
    }
    mean.iter_mut().for_each(|v| *v /= m as f64);
    let x = DMatrix::from_fn(m, d, |i, j| samples[i][j] - mean[j]);

    let gram = &x * x.transpose();
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));

    let scale = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max).max(1.0);
    let tol = 1e-9 * scale;
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n_components);
    let mut variance = Vec::with_capacity(n_components);
    for &i in &order {
        if basis.len() == n_components {
            break;
        }
        let lambda = eig.eigenvalues[i];
        if lambda <= tol {
            break;
        }
        let v = eig.eigenvectors.column(i);
        let u = x.transpose() * v / lambda.sqrt();
        let mut u: Vec<f64> = u.iter().copied().collect();
        // re-orthogonalize against the kept axes to absorb round-off
        if orthonormalize(&mut u, &basis) {
            basis.push(u);
            variance.push(lambda / (m as f64 - 1.0).max(1.0));
        }
    }
    // complete with unit vectors in coordinate order
    let mut e = 0;
    while basis.len() < n_components && e < d {
        let mut u = vec![0.0; d];
        u[e] = 1.0;
        e += 1;
        if orthonormalize(&mut u, &basis) {
            basis.push(u);
            variance.push(0.0);
        }
    }
    if basis.len() < n_components {
        return Err(IndexError::InvalidInput("could not complete the basis".into()));
    }

    Ok(PcaModel {
        mean: mean.iter().map(|v| *v as f32).collect(),
        components: basis
            .into_iter()
            .map(|u| u.into_iter().map(|v| v as f32).collect())
            .collect(),
        explained_variance: variance,
    })
}

/// Modified Gram–Schmidt against `basis`, twice for stability. Returns false
/// when `u` is (numerically) in their span.
fn orthonormalize(u: &mut [f64], basis: &[Vec<f64>]) -> bool {
    let before = norm(u);
    if before == 0.0 {
        return false;
    }
    for _ in 0..2 {
        for b in basis {
            let dot: f64 = u.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in u.iter_mut().zip(b) {
                *x -= dot * y;
            }
        }
    }
    let n = norm(u);
    if n < 1e-6 * before {
        return false;
    }
    u.iter_mut().for_each(|v| *v /= n);
    true
}

fn norm(u: &[f64]) -> f64 {
    u.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_samples(m: usize, d: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // low-rank structure plus noise so the spectrum decays
        let factors: Vec<Vec<f64>> = (0..8).map(|_| (0..d).map(|_| rng.random::<f64>()).collect()).collect();
        (0..m)
            .map(|_| {
                let w: Vec<f64> = (0..8).map(|k| rng.random::<f64>() / (k + 1) as f64).collect();
                (0..d)
                    .map(|j| w.iter().zip(&factors).map(|(a, f)| a * f[j]).sum::<f64>() + 0.01 * rng.random::<f64>())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn too_few_samples() {
        let s = vec![vec![0.0; 10]; 50];
        assert!(matches!(fit_pca(&s, 50), Err(IndexError::TooFewSamples { needed: 51, got: 50 })));
    }

    #[test]
    fn identical_samples_project_to_zero() {
        let s = vec![vec![0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0]; 6];
        let model = fit_pca(&s, 5).unwrap();
        for x in &s {
            assert!(model.project(x).iter().all(|v| v.abs() < 1e-6));
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        let s = random_samples(60, 200, 1);
        let model = fit_pca(&s, 50).unwrap();
        for i in 0..50 {
            for j in 0..50 {
                let dot: f64 = model.components[i]
                    .iter()
                    .zip(&model.components[j])
                    .map(|(a, b)| f64::from(*a) * f64::from(*b))
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-6, "({i},{j}) = {dot}");
            }
        }
        assert!(model.explained_variance.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn reconstruction_error_shrinks_with_components() {
        let s = random_samples(60, 120, 2);
        let model = fit_pca(&s, 50).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..=50 {
            let mse: f64 = s
                .iter()
                .map(|x| {
                    let mut c = model.project(x);
                    c.truncate(k);
                    let r = model.reconstruct(&c);
                    x.iter().zip(&r).map(|(a, b)| (a - b).powi(2)).sum::<f64>()
                })
                .sum::<f64>()
                / s.len() as f64;
            assert!(mse <= prev + 1e-9, "k={k}: {mse} > {prev}");
            prev = mse;
        }
    }
}
