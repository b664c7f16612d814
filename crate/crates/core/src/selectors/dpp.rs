//! Greedy MAP inference for a quality-diversity DPP.
//!
//! Kernel `L = diag(q) · S · diag(q)` with `S` the cosine-similarity matrix and
//! `q_i = Imp(i) + floor`. Adding token `i` to the selected set `Y`
//! multiplies `det(L_Y)` by the Schur complement
//!
//! ```text
//! d_i² = L_ii − L_iY · L_Y⁻¹ · L_Yi
//! ```
//!
//! which is maintained incrementally with one Cholesky row per pick, so a
//! step costs O(N·(|Y| + d)). The log-determinant gain of a pick is
//! `ln d_i²`.
//!
//! Greedy stops once every remaining `d_i²` is at most [`DPP_GAIN_FLOOR`]
//! (the kernel restricted to the selection has reached its numerical rank);
//! the rest of the budget is filled by descending importance.

use crate::error::{Error, Result};
use crate::features::{normalize_importance, FeatureMatrix, ImportanceVector};
use crate::selection::{Method, Selection};

use super::{check_inputs, SelectorConfig};

/// Schur complements at or below this value count as zero gain.
pub const DPP_GAIN_FLOOR: f64 = 1e-12;
/// Schur complements below `-DPP_PSD_JITTER` mean the kernel is not PSD.
pub const DPP_PSD_JITTER: f64 = 1e-8;

pub fn select_dpp(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<Selection> {
    check_inputs(features, w, cfg)?;
    let n = features.n_tokens();
    let imp = normalize_importance(w, cfg.epsilon)?;
    let imp = imp.values();
    let q: Vec<f64> = imp.iter().map(|v| v + cfg.dpp_quality_floor).collect();
    let kernel = |i: usize, j: usize| q[i] * features.similarity(i, j) * q[j];

    let mut residual: Vec<f64> = (0..n).map(|i| kernel(i, i)).collect();
    let mut selected = vec![false; n];
    // Row t holds the t-th Cholesky coefficient of every token.
    let mut chol: Vec<Vec<f64>> = Vec::with_capacity(cfg.k);
    let mut indices = Vec::with_capacity(cfg.k);
    let mut scores = Vec::with_capacity(cfg.k);

    while indices.len() < cfg.k {
        let mut best = usize::MAX;
        for i in 0..n {
            if selected[i] {
                continue;
            }
            if residual[i] < -DPP_PSD_JITTER {
                return Err(Error::KernelConditioning {
                    index: i,
                    residual: residual[i],
                    jitter: DPP_PSD_JITTER,
                });
            }
            if best == usize::MAX || residual[i] > residual[best] {
                best = i;
            }
        }
        let gain = residual[best];
        if gain <= DPP_GAIN_FLOOR {
            break;
        }
        selected[best] = true;
        indices.push(best);
        scores.push(gain.ln());

        let pivot = gain.sqrt();
        let mut row = vec![0.0; n];
        for i in 0..n {
            if selected[i] {
                continue;
            }
            let mut acc = kernel(best, i);
            for prev in &chol {
                acc -= prev[best] * prev[i];
            }
            let e = acc / pivot;
            row[i] = e;
            residual[i] -= e * e;
        }
        chol.push(row);
    }

    if indices.len() < cfg.k {
        let mut rest: Vec<usize> = (0..n).filter(|&i| !selected[i]).collect();
        rest.sort_by(|&a, &b| imp[b].total_cmp(&imp[a]).then(a.cmp(&b)));
        for i in rest.into_iter().take(cfg.k - indices.len()) {
            indices.push(i);
            scores.push(residual[i].max(DPP_GAIN_FLOOR).ln());
        }
    }

    Ok(Selection::new(Method::Dpp, None, indices, scores))
}
