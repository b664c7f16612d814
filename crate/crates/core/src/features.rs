//! Token features, importance scores and the geometry shared by every
//! selector and metric.
//!
//! A [`FeatureMatrix`] owns `n_tokens × dim` finite values stored row-major
//! together with the Euclidean norm of every row. Norms are computed once at
//! construction; rows with zero norm are rejected there because cosine
//! similarity is undefined for them.

use crate::error::{Error, Result};

/// Default stabilizer added to the min-max range in [`normalize_importance`].
pub const DEFAULT_EPSILON: f64 = 1e-8;

/// Dot product with four independent accumulators.
///
/// The summation order is fixed, so the same pair of rows always produces the
/// same bits no matter which code path asks for it.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut tail = 0.0;
    for (x, y) in ra.iter().zip(rb) {
        tail += x * y;
    }
    ((acc[0] + acc[1]) + (acc[2] + acc[3])) + tail
}

#[inline]
fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Cosine similarity `aᵀb / (‖a‖‖b‖)` of two vectors of equal length.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!(
            "vectors have different dimensions ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let na = norm(a);
    if na == 0.0 {
        return Err(Error::DegenerateVector { index: 0 });
    }
    let nb = norm(b);
    if nb == 0.0 {
        return Err(Error::DegenerateVector { index: 1 });
    }
    Ok(dot(a, b) / (na * nb))
}

/// `N × d` token features with cached row norms.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    n_tokens: usize,
    dim: usize,
    data: Vec<f64>,
    norms: Vec<f64>,
}

impl FeatureMatrix {
    /// Builds a matrix from row-major data, validating shape, finiteness and
    /// row norms.
    pub fn new(n_tokens: usize, dim: usize, data: Vec<f64>) -> Result<Self> {
        if n_tokens == 0 || dim == 0 {
            return Err(Error::Shape(format!(
                "feature matrix must be non-empty, got {n_tokens}x{dim}"
            )));
        }
        let expected = n_tokens
            .checked_mul(dim)
            .ok_or_else(|| Error::Shape("feature matrix size overflows".into()))?;
        if data.len() != expected {
            return Err(Error::Pairing {
                expected,
                actual: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut norms = Vec::with_capacity(n_tokens);
        for (index, row) in data.chunks_exact(dim).enumerate() {
            let n = norm(row);
            if n == 0.0 {
                return Err(Error::DegenerateVector { index });
            }
            norms.push(n);
        }
        Ok(Self {
            n_tokens,
            dim,
            data,
            norms,
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Shape(format!(
                    "row {i} has {} columns, expected {dim}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), dim, data)
    }

    #[inline]
    pub fn n_tokens(&self) -> usize {
        self.n_tokens
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    #[inline]
    pub fn norm(&self, i: usize) -> f64 {
        self.norms[i]
    }

    /// Cosine similarity between tokens `i` and `j` using the cached norms.
    ///
    /// Every selector and metric goes through this one expression, so two
    /// code paths asking for the same pair always agree to the last bit.
    #[inline]
    pub fn similarity(&self, i: usize, j: usize) -> f64 {
        dot(self.row(i), self.row(j)) / (self.norms[i] * self.norms[j])
    }

    /// Similarities of every token against token `j`.
    pub fn similarity_row(&self, j: usize) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n_tokens];
        self.similarity_row_into(j, &mut out)?;
        Ok(out)
    }

    /// Writes the similarities against token `j` into `out` (length `N`).
    pub fn similarity_row_into(&self, j: usize, out: &mut [f64]) -> Result<()> {
        self.check_index(j)?;
        if out.len() != self.n_tokens {
            return Err(Error::Pairing {
                expected: self.n_tokens,
                actual: out.len(),
            });
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.similarity(i, j);
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n_tokens {
            return Err(Error::Domain(format!(
                "token index {i} out of range for {} tokens",
                self.n_tokens
            )));
        }
        Ok(())
    }

    /// Returns a copy with each row multiplied by the matching positive factor.
    pub fn scale_rows(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.n_tokens {
            return Err(Error::Pairing {
                expected: self.n_tokens,
                actual: factors.len(),
            });
        }
        let mut data = self.data.clone();
        for (row, &f) in data.chunks_exact_mut(self.dim).zip(factors) {
            row.iter_mut().for_each(|v| *v *= f);
        }
        Self::new(self.n_tokens, self.dim, data)
    }
}

/// Raw per-token importance scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ImportanceVector(Vec<f64>);

impl ImportanceVector {
    pub fn new(scores: Vec<f64>) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::Shape("importance vector must be non-empty".into()));
        }
        if let Some(index) = scores.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(scores))
    }

    #[inline]
    pub fn scores(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fails unless this vector has one score per token of `features`.
    pub fn check_paired(&self, features: &FeatureMatrix) -> Result<()> {
        if self.len() != features.n_tokens() {
            return Err(Error::Pairing {
                expected: features.n_tokens(),
                actual: self.len(),
            });
        }
        Ok(())
    }
}

/// Min-max normalized importance, each value in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedImportance(Vec<f64>);

impl NormalizedImportance {
    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `(w_i - min w) / (max w - min w + epsilon)`.
pub fn normalize_importance(w: &ImportanceVector, epsilon: f64) -> Result<NormalizedImportance> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    let scores = w.scores();
    let (min, max) = scores
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let denom = max - min + epsilon;
    // min <= w_i <= max and denom > max - min, so the ratio is in [0, 1) up to
    // rounding; the clamp only absorbs that rounding.
    let values = scores
        .iter()
        .map(|&v| ((v - min) / denom).clamp(0.0, 1.0))
        .collect();
    Ok(NormalizedImportance(values))
}

/// Index of the largest value, lowest index on ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}
