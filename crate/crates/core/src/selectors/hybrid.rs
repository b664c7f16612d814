use crate::error::Result;
use crate::features::{normalize_importance, FeatureMatrix, ImportanceVector};
use crate::selection::{Method, Selection};

use super::fps::fps_over;
use super::greedy::importance_order;
use super::{check_inputs, SelectorConfig};

/// Size of the importance pre-filter pool: `round(K + (1-λ)(N-K))` clamped
/// to `[K, N]`.
pub fn hybrid_pool_size(n: usize, k: usize, lambda: f64) -> usize {
    let p = (k as f64 + (1.0 - lambda) * (n - k) as f64).round() as usize;
    p.clamp(k, n)
}

/// Two-stage baseline: keep the top-P tokens by importance, then run farthest
/// point sampling inside that pool.
pub fn select_naive_hybrid(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<Selection> {
    check_inputs(features, w, cfg)?;
    let n = features.n_tokens();
    let pool_size = hybrid_pool_size(n, cfg.k, cfg.lambda);
    let mut pool = importance_order(w);
    pool.truncate(pool_size);
    pool.sort_unstable();

    let imp = normalize_importance(w, cfg.epsilon)?;
    let (indices, scores) = fps_over(features, imp.values(), &pool, cfg.k);
    Ok(Selection::new(
        Method::Hybrid,
        Some(cfg.lambda),
        indices,
        scores,
    ))
}
