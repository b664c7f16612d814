use crate::error::Result;
use crate::features::{FeatureMatrix, ImportanceVector};
use crate::selection::{Method, Selection};

use super::{check_inputs, SelectorConfig};

/// Token indices ordered by descending raw importance, lower index first on
/// ties.
pub(crate) fn importance_order(w: &ImportanceVector) -> Vec<usize> {
    let scores = w.scores();
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}

/// The K tokens with the largest raw importance, in descending order.
///
/// Step scores are the raw importance of each pick.
pub fn select_greedy_importance(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<Selection> {
    check_inputs(features, w, cfg)?;
    let mut indices = importance_order(w);
    indices.truncate(cfg.k);
    let scores = indices.iter().map(|&i| w.scores()[i]).collect();
    Ok(Selection::new(Method::Importance, None, indices, scores))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::random;
    use super::*;

    fn select(w: &[f64], k: usize) -> Vec<usize> {
        let rows: Vec<[f64; 1]> = vec![[1.0]; w.len()];
        let f = FeatureMatrix::from_rows(&rows).unwrap();
        let w = ImportanceVector::new(w.to_vec()).unwrap();
        select_greedy_importance(&f, &w, &SelectorConfig::new(k))
            .unwrap()
            .indices
    }

    #[test]
    fn picks_largest() {
        assert_eq!(select(&[0.1, 0.9, 0.5], 2), vec![1, 2]);
    }

    #[test]
    fn ties_go_to_lower_index() {
        assert_eq!(select(&[7.0, 7.0, 7.0, 7.0], 2), vec![0, 1]);
    }

    #[test]
    fn matches_full_sort_oracle() {
        let (f, w) = random(64, 2, 21);
        let got = select_greedy_importance(&f, &w, &SelectorConfig::new(16)).unwrap();
        // Oracle: repeatedly remove the maximum with a linear scan.
        let mut left: Vec<(usize, f64)> = w.scores().iter().copied().enumerate().collect();
        let mut expected = Vec::new();
        for _ in 0..16 {
            let mut best = 0;
            for (p, &(_, v)) in left.iter().enumerate() {
                if v > left[best].1 {
                    best = p;
                }
            }
            expected.push(left.remove(best).0);
        }
        assert_eq!(got.indices, expected);
        let scores = got.step_scores.unwrap();
        assert!(scores.windows(2).all(|p| p[0] >= p[1]));
    }
}
