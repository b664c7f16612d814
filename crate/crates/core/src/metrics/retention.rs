use crate::error::{Error, Result};
use crate::features::ImportanceVector;
use crate::selection::Selection;

/// Share of the total importance mass carried by the selected tokens.
///
/// The numerator is summed in ascending index order so that selecting every
/// token yields exactly `1.0`.
pub fn importance_retention(w: &ImportanceVector, selection: &Selection) -> Result<f64> {
    let scores = w.scores();
    if let Some(i) = scores.iter().position(|&v| v < 0.0) {
        return Err(Error::Domain(format!(
            "importance retention needs non-negative scores; token {i} has {}",
            scores[i]
        )));
    }
    selection.validate(Some(scores.len()))?;
    let total: f64 = scores.iter().sum();
    if total == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    let mut idx = selection.indices.clone();
    idx.sort_unstable();
    let kept: f64 = idx.iter().map(|&i| scores[i]).sum();
    Ok(kept / total)
}
