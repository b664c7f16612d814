use serde::Serialize;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::rng::Stream;

pub const DEFAULT_ANGLE_BINS: usize = 60;
pub const DEFAULT_MAX_PAIRS: usize = 1_000_000;

/// Histogram of pairwise token angles over `[0°, 180°]`.
///
/// Bins are left-closed, `[low, high)`, except the last, which also holds
/// exactly 180°.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleHistogram {
    pub counts: Vec<u64>,
    pub n_pairs: u64,
    /// Fraction of pairs with an obtuse angle (negative cosine similarity).
    pub mass_above_90: f64,
}

impl AngleHistogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_width(&self) -> f64 {
        180.0 / self.counts.len() as f64
    }

    /// `(low, high)` edges of bin `b` in degrees.
    pub fn bin_edges(&self, b: usize) -> (f64, f64) {
        let w = self.bin_width();
        (b as f64 * w, (b + 1) as f64 * w)
    }

    /// Bin holding `degrees`.
    pub fn bin_of(&self, degrees: f64) -> usize {
        bin_index(degrees, self.counts.len())
    }
}

fn bin_index(degrees: f64, n_bins: usize) -> usize {
    let b = (degrees / (180.0 / n_bins as f64)).floor();
    (b.max(0.0) as usize).min(n_bins - 1)
}

/// Angle in degrees for a cosine similarity, clamped into the valid range.
pub fn angle_degrees(similarity: f64) -> f64 {
    similarity.clamp(-1.0, 1.0).acos().to_degrees()
}

/// Maps a linear index over pairs `(i, j)`, `i < j`, enumerated row by row,
/// back to the pair.
fn unrank_pair(n: usize, p: usize) -> (usize, usize) {
    // Pairs before row i: i·(2n − i − 1)/2.
    let offset = |i: usize| i * (2 * n - i - 1) / 2;
    let (mut lo, mut hi) = (0usize, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if offset(mid) <= p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let i = lo;
    (i, i + 1 + (p - offset(i)))
}

/// Pairwise-angle histogram. When there are more than `max_pairs` pairs, a
/// uniform subsample of `max_pairs` distinct pairs is drawn from stream 0 of
/// `seed`.
pub fn angle_histogram(
    features: &FeatureMatrix,
    n_bins: usize,
    max_pairs: usize,
    seed: u64,
) -> Result<AngleHistogram> {
    let n = features.n_tokens();
    if n < 2 {
        return Err(Error::Domain(
            "angle histogram needs at least 2 tokens".into(),
        ));
    }
    if n_bins == 0 {
        return Err(Error::InvalidParameter("n_bins must be at least 1".into()));
    }
    if max_pairs == 0 {
        return Err(Error::InvalidParameter(
            "max_pairs must be at least 1".into(),
        ));
    }

    let mut counts = vec![0u64; n_bins];
    let mut obtuse = 0u64;
    let mut record = |i: usize, j: usize| {
        let s = features.similarity(i, j);
        if s < 0.0 {
            obtuse += 1;
        }
        counts[bin_index(angle_degrees(s), n_bins)] += 1;
    };

    let total = n * (n - 1) / 2;
    let n_pairs = if total > max_pairs {
        let mut stream = Stream::new(seed, 0);
        for p in stream.sample_indices(total, max_pairs) {
            let (i, j) = unrank_pair(n, p);
            record(i, j);
        }
        max_pairs
    } else {
        for i in 0..n {
            for j in i + 1..n {
                record(i, j);
            }
        }
        total
    };

    Ok(AngleHistogram {
        counts,
        n_pairs: n_pairs as u64,
        mass_above_90: obtuse as f64 / n_pairs as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_pair_lands_in_ninety_bin() {
        let f = FeatureMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let h = angle_histogram(&f, 60, 100, 0).unwrap();
        assert_eq!(h.n_pairs, 1);
        assert_eq!(h.counts[30], 1);
        assert_eq!(h.bin_edges(30), (90.0, 93.0));
        assert_eq!(h.mass_above_90, 0.0);
    }

    #[test]
    fn forty_five_degrees() {
        let f = FeatureMatrix::from_rows(&[[1.0, 1.0], [1.0, 0.0]]).unwrap();
        let h = angle_histogram(&f, 60, 100, 0).unwrap();
        assert_eq!(h.counts[15], 1);
        assert_eq!(h.counts.iter().sum::<u64>(), 1);
    }

    #[test]
    fn obtuse_and_extremes() {
        let f = FeatureMatrix::from_rows(&[[1.0, 0.0], [-1.0, 0.0], [1.0, 0.0]]).unwrap();
        let h = angle_histogram(&f, 60, 100, 0).unwrap();
        // Two antiparallel pairs at 180° and one parallel pair at 0°.
        assert_eq!(h.counts[59], 2);
        assert_eq!(h.counts[0], 1);
        assert!((h.mass_above_90 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn unrank_covers_all_pairs() {
        for n in 2..12 {
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    assert_eq!(unrank_pair(n, k), (i, j));
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn subsampling_caps_pairs() {
        let rows: Vec<[f64; 2]> = (0..30).map(|i| [1.0, i as f64]).collect();
        let f = FeatureMatrix::from_rows(&rows).unwrap();
        let h = angle_histogram(&f, 10, 50, 3).unwrap();
        assert_eq!(h.n_pairs, 50);
        assert_eq!(h.counts.iter().sum::<u64>(), 50);
        assert_eq!(h, angle_histogram(&f, 10, 50, 3).unwrap());
    }

    #[test]
    fn errors() {
        let one = FeatureMatrix::from_rows(&[[1.0]]).unwrap();
        assert!(angle_histogram(&one, 60, 10, 0).is_err());
        let two = FeatureMatrix::from_rows(&[[1.0], [2.0]]).unwrap();
        assert!(angle_histogram(&two, 0, 10, 0).is_err());
        assert!(angle_histogram(&two, 10, 0, 0).is_err());
    }
}
