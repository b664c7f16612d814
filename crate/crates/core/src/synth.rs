//! Seeded synthetic token manifolds: Gaussian blobs around random directions
//! with i.i.d. uniform importance.
//!
//! The generator consumes stream 0 of `rng_seed` in a fixed order:
//!
//! 1. for each cluster, `dim` normals normalized to a unit direction (redrawn
//!    if all zero) and scaled by `center_scale`;
//! 2. for each token, a cluster label `below(n_clusters)` followed by `dim`
//!    normals scaled by `cluster_spread` and added to the center (the noise is
//!    redrawn while the row has zero norm);
//! 3. one `uniform_open()` importance per token;
//! 4. with `non_negative`, every entry is shifted by the global minimum; rows
//!    that end up all zero are redrawn as in step 2 until they are non-zero
//!    and no entry falls below the minimum.

use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, ImportanceVector};
use crate::rng::Stream;

const MAX_ROW_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldSpec {
    pub n_tokens: usize,
    pub dim: usize,
    pub n_clusters: usize,
    /// Within-cluster standard deviation per coordinate.
    pub cluster_spread: f64,
    /// Norm of each cluster center.
    pub center_scale: f64,
    /// Shift features so the smallest entry is zero.
    pub non_negative: bool,
    pub rng_seed: u64,
}

impl ManifoldSpec {
    /// The reference clustered fixture: 256 tokens, 32 dims, 8 clusters.
    pub fn fixture(seed: u64) -> Self {
        Self {
            n_tokens: 256,
            dim: 32,
            n_clusters: 8,
            cluster_spread: 0.1,
            center_scale: 1.0,
            non_negative: false,
            rng_seed: seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_tokens == 0 || self.dim == 0 {
            return Err(Error::InvalidParameter(
                "n_tokens and dim must be positive".into(),
            ));
        }
        if self.n_clusters == 0 || self.n_clusters > self.n_tokens {
            return Err(Error::InvalidParameter(format!(
                "n_clusters must lie in [1, {}], got {}",
                self.n_tokens, self.n_clusters
            )));
        }
        if !(self.cluster_spread > 0.0 && self.cluster_spread.is_finite()) {
            return Err(Error::InvalidParameter(
                "cluster_spread must be positive".into(),
            ));
        }
        if !(self.center_scale > 0.0 && self.center_scale.is_finite()) {
            return Err(Error::InvalidParameter(
                "center_scale must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticManifold {
    pub features: FeatureMatrix,
    pub importance: ImportanceVector,
    pub labels: Vec<usize>,
    /// Number of rows regenerated because they came out with zero norm.
    pub retries: usize,
}

fn draw_row(stream: &mut Stream, center: &[f64], spread: f64, out: &mut [f64]) {
    for (o, &c) in out.iter_mut().zip(center) {
        *o = c + spread * stream.normal();
    }
}

pub fn generate_manifold(spec: &ManifoldSpec) -> Result<SyntheticManifold> {
    spec.validate()?;
    let (n, dim) = (spec.n_tokens, spec.dim);
    let mut stream = Stream::new(spec.rng_seed, 0);
    let mut retries = 0;

    let mut centers = vec![0.0; spec.n_clusters * dim];
    for center in centers.chunks_exact_mut(dim) {
        loop {
            center.iter_mut().for_each(|v| *v = stream.normal());
            let norm = center.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                center
                    .iter_mut()
                    .for_each(|v| *v *= spec.center_scale / norm);
                break;
            }
        }
    }

    let mut labels = Vec::with_capacity(n);
    let mut data = vec![0.0; n * dim];
    for row in data.chunks_exact_mut(dim) {
        let label = stream.below(spec.n_clusters as u64) as usize;
        let center = &centers[label * dim..(label + 1) * dim];
        let mut tries = 0;
        loop {
            draw_row(&mut stream, center, spec.cluster_spread, row);
            if row.iter().any(|&v| v != 0.0) {
                break;
            }
            retries += 1;
            tries += 1;
            if tries >= MAX_ROW_RETRIES {
                return Err(Error::Domain("could not draw a non-zero token row".into()));
            }
        }
        labels.push(label);
    }

    let importance: Vec<f64> = (0..n).map(|_| stream.uniform_open()).collect();

    if spec.non_negative {
        let min = data.iter().copied().fold(f64::INFINITY, f64::min);
        for i in 0..n {
            let row = &mut data[i * dim..(i + 1) * dim];
            if row.iter().all(|&v| v == min) {
                let center = &centers[labels[i] * dim..(labels[i] + 1) * dim];
                let mut tries = 0;
                loop {
                    retries += 1;
                    tries += 1;
                    draw_row(&mut stream, center, spec.cluster_spread, row);
                    if row.iter().all(|&v| v >= min) && row.iter().any(|&v| v != min) {
                        break;
                    }
                    if tries >= MAX_ROW_RETRIES {
                        return Err(Error::Domain("could not draw a non-zero token row".into()));
                    }
                }
            }
        }
        data.iter_mut().for_each(|v| *v -= min);
    }

    Ok(SyntheticManifold {
        features: FeatureMatrix::new(n, dim, data)?,
        importance: ImportanceVector::new(importance)?,
        labels,
        retries,
    })
}
