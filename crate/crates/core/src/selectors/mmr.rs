//! Maximal marginal relevance over normalized importance and cosine
//! similarity.
//!
//! Each step picks the unselected token maximizing
//!
//! ```text
//! λ · Imp(i) − (1 − λ) · m_i,   m_i = max_{j ∈ S} Sim(i, j)
//! ```
//!
//! with `m` initialized to −1. The first pick is the most important token
//! regardless of λ. The recorded step score is the objective above for the
//! winning token, evaluated against the selected set before the pick (so the
//! first score is `λ · Imp + (1 − λ)`).
//!
//! [`select_mmr`] keeps `m` as a running maximum and folds in one similarity
//! row per pick: O(K·N) similarity evaluations and O(N) extra memory.
//! [`select_mmr_naive`] recomputes `m` from scratch at every step, O(K²·N)
//! similarity evaluations. Both evaluate the same expressions on the same
//! operands, so their outputs are bit-identical.

use crate::error::Result;
use crate::features::{argmax, normalize_importance, FeatureMatrix, ImportanceVector};
use crate::selection::{Method, Selection};

use super::{check_inputs, SelectorConfig};

/// Running maximum-similarity state of the incremental selector.
#[derive(Debug, Clone)]
pub struct MaxSimState {
    m: Vec<f64>,
    selected: Vec<bool>,
    row: Vec<f64>,
    negative: u64,
}

impl MaxSimState {
    pub fn new(n_tokens: usize) -> Self {
        Self {
            m: vec![-1.0; n_tokens],
            selected: vec![false; n_tokens],
            row: vec![0.0; n_tokens],
            negative: 0,
        }
    }

    pub fn max_sim(&self) -> &[f64] {
        &self.m
    }

    pub fn selected_mask(&self) -> &[bool] {
        &self.selected
    }

    /// Marks `token` selected and folds its similarity row into `m`.
    pub fn push(&mut self, features: &FeatureMatrix, token: usize) -> Result<()> {
        self.selected[token] = true;
        features.similarity_row_into(token, &mut self.row)?;
        for ((m, &s), &sel) in self.m.iter_mut().zip(&self.row).zip(&self.selected) {
            if sel {
                continue;
            }
            if s < 0.0 {
                self.negative += 1;
            }
            if s > *m {
                *m = s;
            }
        }
        Ok(())
    }
}

#[inline]
fn objective(lambda: f64, imp: f64, max_sim: f64) -> f64 {
    lambda * imp - (1.0 - lambda) * max_sim
}

/// Best unselected token under the MMR objective, lowest index on ties.
#[inline]
fn best_candidate(lambda: f64, imp: &[f64], max_sim: &[f64], selected: &[bool]) -> (usize, f64) {
    let mut best = usize::MAX;
    let mut best_score = f64::NEG_INFINITY;
    for i in 0..imp.len() {
        if selected[i] {
            continue;
        }
        let score = objective(lambda, imp[i], max_sim[i]);
        if best == usize::MAX || score > best_score {
            best = i;
            best_score = score;
        }
    }
    (best, best_score)
}

/// Incremental MMR selection.
pub fn select_mmr(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<Selection> {
    check_inputs(features, w, cfg)?;
    let imp = normalize_importance(w, cfg.epsilon)?;
    let imp = imp.values();
    let lambda = cfg.lambda;

    let mut state = MaxSimState::new(features.n_tokens());
    let mut indices = Vec::with_capacity(cfg.k);
    let mut scores = Vec::with_capacity(cfg.k);

    let first = argmax(imp);
    indices.push(first);
    scores.push(objective(lambda, imp[first], state.m[first]));
    state.push(features, first)?;

    while indices.len() < cfg.k {
        let (pick, score) = best_candidate(lambda, imp, &state.m, &state.selected);
        indices.push(pick);
        scores.push(score);
        state.push(features, pick)?;
    }

    let mut selection = Selection::new(Method::Mmr, Some(lambda), indices, scores);
    selection.negative_similarities = state.negative;
    Ok(selection)
}

/// Reference MMR that rebuilds every candidate's maximum similarity against
/// the whole selected set at every step.
pub fn select_mmr_naive(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<Selection> {
    check_inputs(features, w, cfg)?;
    let imp = normalize_importance(w, cfg.epsilon)?;
    let imp = imp.values();
    let lambda = cfg.lambda;
    let n = features.n_tokens();

    let mut selected = vec![false; n];
    let mut max_sim = vec![-1.0f64; n];
    let mut indices: Vec<usize> = Vec::with_capacity(cfg.k);
    let mut scores = Vec::with_capacity(cfg.k);

    let first = argmax(imp);
    indices.push(first);
    scores.push(objective(lambda, imp[first], -1.0));
    selected[first] = true;

    while indices.len() < cfg.k {
        for i in 0..n {
            if selected[i] {
                continue;
            }
            let mut m = -1.0f64;
            for &j in &indices {
                let s = features.similarity(i, j);
                if s > m {
                    m = s;
                }
            }
            max_sim[i] = m;
        }
        let (pick, score) = best_candidate(lambda, imp, &max_sim, &selected);
        indices.push(pick);
        scores.push(score);
        selected[pick] = true;
    }

    Ok(Selection::new(
        Method::MmrNaive,
        Some(lambda),
        indices,
        scores,
    ))
}
