//! Hopkins clustering statistic of a selected subset under cosine distance.
//!
//! For a selection `S` of size `m` and a random reference set `R` of `m`
//! points,
//!
//! ```text
//! H = Σ_r d(r, S) / (Σ_r d(r, S) + Σ_v d(v, S∖{v}))
//! ```
//!
//! where `d(x, Y)` is the cosine distance from `x` to its nearest neighbour in
//! `Y`. Values near 1 mean the selection is tightly clustered relative to the
//! reference draw; values near 0 mean it is spread out. The result is the
//! mean over `n_trials` independent reference draws, trial `t` using stream
//! `t` of the configured seed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{dot, FeatureMatrix};
use crate::rng::Stream;
use crate::selection::Selection;

/// Cosine distances at or below this are rounding noise and count as zero.
const DISTANCE_SNAP: f64 = 8.0 * f64::EPSILON;

pub const DEFAULT_HOPKINS_TRIALS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceMode {
    /// Draw reference points from the token pool, preferring unselected
    /// tokens.
    #[default]
    ResampleFromPool,
    /// Draw reference points uniformly inside the per-dimension bounding box
    /// of all tokens.
    UniformInBbox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HopkinsConfig {
    pub rng_seed: u64,
    pub reference_mode: ReferenceMode,
    pub n_trials: usize,
}

impl Default for HopkinsConfig {
    fn default() -> Self {
        Self {
            rng_seed: 0,
            reference_mode: ReferenceMode::ResampleFromPool,
            n_trials: DEFAULT_HOPKINS_TRIALS,
        }
    }
}

impl HopkinsConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_trials(mut self, n_trials: usize) -> Self {
        self.n_trials = n_trials;
        self
    }
}

#[inline]
fn cosine_distance(sim: f64) -> f64 {
    let d = 1.0 - sim;
    if d <= DISTANCE_SNAP {
        0.0
    } else {
        d
    }
}

/// Nearest-neighbour distance from an arbitrary point to the selection.
fn distance_to_selection(
    features: &FeatureMatrix,
    point: &[f64],
    norm: f64,
    selected: &[usize],
) -> f64 {
    selected
        .iter()
        .map(|&j| cosine_distance(dot(point, features.row(j)) / (norm * features.norm(j))))
        .fold(f64::INFINITY, f64::min)
}

/// `Σ_v d(v, S∖{v})`; independent of the reference draw.
fn selection_spread(features: &FeatureMatrix, selected: &[usize]) -> f64 {
    selected
        .iter()
        .enumerate()
        .map(|(a, &i)| {
            selected
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .map(|(_, &j)| cosine_distance(features.similarity(i, j)))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

fn reference_sum(
    features: &FeatureMatrix,
    selected: &[usize],
    mask: &[bool],
    mode: ReferenceMode,
    stream: &mut Stream,
) -> f64 {
    let m = selected.len();
    match mode {
        ReferenceMode::ResampleFromPool => {
            let rest: Vec<usize> = (0..features.n_tokens()).filter(|&i| !mask[i]).collect();
            let refs: Vec<usize> = if rest.len() >= m {
                stream
                    .sample_indices(rest.len(), m)
                    .into_iter()
                    .map(|p| rest[p])
                    .collect()
            } else if !rest.is_empty() {
                (0..m)
                    .map(|_| rest[stream.below(rest.len() as u64) as usize])
                    .collect()
            } else {
                stream.sample_indices(features.n_tokens(), m)
            };
            refs.iter()
                .map(|&r| {
                    distance_to_selection(features, features.row(r), features.norm(r), selected)
                })
                .sum()
        }
        ReferenceMode::UniformInBbox => {
            let dim = features.dim();
            let mut lo = vec![f64::INFINITY; dim];
            let mut hi = vec![f64::NEG_INFINITY; dim];
            for row in features.rows() {
                for (c, &v) in row.iter().enumerate() {
                    lo[c] = lo[c].min(v);
                    hi[c] = hi[c].max(v);
                }
            }
            let mut point = vec![0.0; dim];
            let mut total = 0.0;
            for _ in 0..m {
                let norm = loop {
                    for c in 0..dim {
                        point[c] = lo[c] + (hi[c] - lo[c]) * stream.uniform();
                    }
                    let n = dot(&point, &point).sqrt();
                    if n > 0.0 {
                        break n;
                    }
                };
                total += distance_to_selection(features, &point, norm, selected);
            }
            total
        }
    }
}

/// Monte-Carlo averaged Hopkins statistic of `selection`.
pub fn hopkins_statistic(
    features: &FeatureMatrix,
    selection: &Selection,
    cfg: &HopkinsConfig,
) -> Result<f64> {
    if cfg.n_trials == 0 {
        return Err(Error::InvalidParameter(
            "n_trials must be at least 1".into(),
        ));
    }
    selection.validate(Some(features.n_tokens()))?;
    let selected = &selection.indices;
    if selected.len() < 2 {
        return Err(Error::Domain(format!(
            "Hopkins statistic needs at least 2 selected tokens, got {}",
            selected.len()
        )));
    }
    let mask = selection.mask(features.n_tokens());
    let spread = selection_spread(features, selected);

    let mut total = 0.0;
    for trial in 0..cfg.n_trials {
        let mut stream = Stream::new(cfg.rng_seed, trial as u64);
        let reference = reference_sum(features, selected, &mask, cfg.reference_mode, &mut stream);
        let denom = reference + spread;
        if denom == 0.0 {
            return Err(Error::DegenerateGeometry);
        }
        total += reference / denom;
    }
    Ok(total / cfg.n_trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selection::Method;

    fn sel(idx: &[usize]) -> Selection {
        Selection::new(Method::Fps, None, idx.to_vec(), vec![0.0; idx.len()])
    }

    #[test]
    fn duplicate_selection_is_one() {
        let f = FeatureMatrix::from_rows(&[[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        for mode in [
            ReferenceMode::ResampleFromPool,
            ReferenceMode::UniformInBbox,
        ] {
            let cfg = HopkinsConfig {
                reference_mode: mode,
                ..HopkinsConfig::default()
            };
            assert_eq!(hopkins_statistic(&f, &sel(&[0, 1]), &cfg).unwrap(), 1.0);
        }
    }

    #[test]
    fn near_duplicates_snap_to_one() {
        // Parallel rows whose self-similarity rounds slightly off 1.
        let f =
            FeatureMatrix::from_rows(&[[0.1, 0.7, 0.3], [0.3, 2.1, 0.9], [1.0, 0.0, 0.0]]).unwrap();
        let h = hopkins_statistic(&f, &sel(&[0, 1]), &HopkinsConfig::default()).unwrap();
        assert_eq!(h, 1.0);
    }

    #[test]
    fn errors() {
        let f = FeatureMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(
            hopkins_statistic(&f, &sel(&[0]), &HopkinsConfig::default()),
            Err(Error::Domain(_))
        ));
        assert!(
            hopkins_statistic(&f, &sel(&[0, 1]), &HopkinsConfig::default().with_trials(0)).is_err()
        );

        let same = FeatureMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0], [2.0, 2.0]]).unwrap();
        assert!(matches!(
            hopkins_statistic(&same, &sel(&[0, 1]), &HopkinsConfig::default()),
            Err(Error::DegenerateGeometry)
        ));
    }

    #[test]
    fn spread_selection_scores_low() {
        // Orthogonal selected tokens; references sit close to them.
        let f = FeatureMatrix::from_rows(&[
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [1.0, 0.05, 0.0],
            [0.05, 1.0, 0.0],
            [0.0, 0.05, 1.0],
        ])
        .unwrap();
        let h = hopkins_statistic(&f, &sel(&[0, 1, 2]), &HopkinsConfig::default()).unwrap();
        assert!(h < 0.01, "{h}");
    }

    #[test]
    fn deterministic_given_seed() {
        let f =
            FeatureMatrix::from_rows(&[[1.0, 0.2], [0.3, 1.0], [0.5, 0.5], [0.9, 0.1], [0.2, 0.8]])
                .unwrap();
        let cfg = HopkinsConfig::default().with_seed(9);
        let a = hopkins_statistic(&f, &sel(&[0, 2]), &cfg).unwrap();
        let b = hopkins_statistic(&f, &sel(&[0, 2]), &cfg).unwrap();
        assert_eq!(a, b);
        assert!((0.0..=1.0).contains(&a));
    }
}
