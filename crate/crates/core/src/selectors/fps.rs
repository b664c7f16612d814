use crate::error::Result;
use crate::features::{normalize_importance, FeatureMatrix, ImportanceVector};
use crate::selection::{Method, Selection};

use super::{check_inputs, SelectorConfig};

/// Farthest point sampling in cosine distance over `candidates`.
///
/// `candidates` must be sorted ascending. The first pick is the candidate with
/// the largest normalized importance; each later pick minimizes its maximum
/// similarity to the picks so far. Ties go to the lowest token index. Step
/// scores are the first pick's importance, then `1 - max_sim` of each pick.
pub(crate) fn fps_over(
    features: &FeatureMatrix,
    imp: &[f64],
    candidates: &[usize],
    k: usize,
) -> (Vec<usize>, Vec<f64>) {
    debug_assert!(k >= 1 && k <= candidates.len());
    debug_assert!(candidates.windows(2).all(|p| p[0] < p[1]));

    let mut first = 0;
    for (p, &c) in candidates.iter().enumerate() {
        if imp[c] > imp[candidates[first]] {
            first = p;
        }
    }

    let mut max_sim = vec![-1.0f64; candidates.len()];
    let mut taken = vec![false; candidates.len()];
    let mut indices = Vec::with_capacity(k);
    let mut scores = Vec::with_capacity(k);

    let mut pick = first;
    scores.push(imp[candidates[pick]]);
    loop {
        taken[pick] = true;
        let token = candidates[pick];
        indices.push(token);
        if indices.len() == k {
            break;
        }
        let mut best: Option<usize> = None;
        for (p, &c) in candidates.iter().enumerate() {
            if taken[p] {
                continue;
            }
            let s = features.similarity(c, token);
            if s > max_sim[p] {
                max_sim[p] = s;
            }
            if best.is_none_or(|b| max_sim[p] < max_sim[b]) {
                best = Some(p);
            }
        }
        pick = best.expect("k <= number of candidates");
        scores.push(1.0 - max_sim[pick]);
    }
    (indices, scores)
}

/// Greedy diversity: farthest point sampling seeded at the most important
/// token.
pub fn select_fps(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<Selection> {
    check_inputs(features, w, cfg)?;
    let imp = normalize_importance(w, cfg.epsilon)?;
    let all: Vec<usize> = (0..features.n_tokens()).collect();
    let (indices, scores) = fps_over(features, imp.values(), &all, cfg.k);
    Ok(Selection::new(Method::Fps, None, indices, scores))
}
