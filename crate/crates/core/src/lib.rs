//! Importance- and diversity-aware selection of K out of N feature vectors
//! ("visual tokens").
//!
//! The main entry point is [`selectors::select_mmr`], a greedy maximal
//! marginal relevance selector that trades normalized token importance
//! against the maximum cosine similarity to tokens already kept, using an
//! O(K·N) running-maximum update. The remaining selectors (greedy importance,
//! farthest point sampling, a two-stage hybrid and a greedy DPP) and the
//! metrics in [`metrics`] exist to compare strategies on the
//! (Hopkins statistic, importance retention) plane.

pub mod bench;
pub mod error;
pub mod features;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod selection;
pub mod selectors;
pub mod sweep;
pub mod synth;

pub use error::{Error, Result};
pub use features::{
    cosine_similarity, normalize_importance, FeatureMatrix, ImportanceVector, NormalizedImportance,
};
pub use selection::{Method, Selection};
pub use selectors::{select, SelectorConfig};
