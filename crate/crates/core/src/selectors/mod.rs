//! Token subset selectors.
//!
//! All selectors are deterministic greedy procedures that break ties toward
//! the lowest token index. [`select_mmr`] is the production path; the other
//! strategies are the baselines it is compared against, and
//! [`select_mmr_naive`] is the quadratic reference used to check the
//! incremental update.

mod dpp;
mod fps;
mod greedy;
mod hybrid;
mod mmr;

pub use dpp::{select_dpp, DPP_GAIN_FLOOR, DPP_PSD_JITTER};
pub use fps::select_fps;
pub use greedy::select_greedy_importance;
pub use hybrid::{hybrid_pool_size, select_naive_hybrid};
pub use mmr::{select_mmr, select_mmr_naive, MaxSimState};

use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, ImportanceVector, DEFAULT_EPSILON};
use crate::selection::{Method, Selection};

/// Default MMR / hybrid trade-off.
pub const DEFAULT_LAMBDA: f64 = 0.5;
/// Default additive quality floor for the DPP kernel.
pub const DEFAULT_DPP_QUALITY_FLOOR: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct SelectorConfig {
    /// Budget K.
    pub k: usize,
    /// Importance weight λ; `1` is pure importance, `0` pure diversity.
    pub lambda: f64,
    pub epsilon: f64,
    pub dpp_quality_floor: f64,
    pub rng_seed: u64,
}

impl SelectorConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            lambda: DEFAULT_LAMBDA,
            epsilon: DEFAULT_EPSILON,
            dpp_quality_floor: DEFAULT_DPP_QUALITY_FLOOR,
            rng_seed: 0,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self, n_tokens: usize) -> Result<()> {
        if self.k == 0 || self.k > n_tokens {
            return Err(Error::Budget {
                k: self.k,
                n: n_tokens,
            });
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie in [0, 1], got {}",
                self.lambda
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.dpp_quality_floor >= 0.0 && self.dpp_quality_floor.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "dpp quality floor must be non-negative, got {}",
                self.dpp_quality_floor
            )));
        }
        Ok(())
    }
}

fn check_inputs(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<()> {
    w.check_paired(features)?;
    cfg.validate(features.n_tokens())
}

/// Runs the selector named by `method`.
pub fn select(
    method: Method,
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SelectorConfig,
) -> Result<Selection> {
    match method {
        Method::Importance => select_greedy_importance(features, w, cfg),
        Method::Fps => select_fps(features, w, cfg),
        Method::Hybrid => select_naive_hybrid(features, w, cfg),
        Method::Mmr => select_mmr(features, w, cfg),
        Method::MmrNaive => select_mmr_naive(features, w, cfg),
        Method::Dpp => select_dpp(features, w, cfg),
    }
}
