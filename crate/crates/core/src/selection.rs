use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Selection strategy tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Importance,
    Fps,
    Hybrid,
    Mmr,
    MmrNaive,
    Dpp,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Importance,
        Method::Fps,
        Method::Hybrid,
        Method::Mmr,
        Method::MmrNaive,
        Method::Dpp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Importance => "importance",
            Method::Fps => "fps",
            Method::Hybrid => "hybrid",
            Method::Mmr => "mmr",
            Method::MmrNaive => "mmr-naive",
            Method::Dpp => "dpp",
        }
    }

    /// Whether the strategy is parameterized by λ.
    pub fn uses_lambda(self) -> bool {
        matches!(self, Method::Hybrid | Method::Mmr | Method::MmrNaive)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method '{s}'")))
    }
}

/// An ordered subset of token indices produced by a selector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub method: Method,
    pub lambda: Option<f64>,
    /// Chosen tokens in selection order.
    pub indices: Vec<usize>,
    /// Objective value of the winning token at each greedy step.
    pub step_scores: Option<Vec<f64>>,
    /// Candidate/selected similarity values below zero seen while updating
    /// the running maximum (fast MMR only).
    #[serde(default, skip_serializing_if = "is_zero")]
    pub negative_similarities: u64,
}

fn is_zero(v: &u64) -> bool {
    *v == 0
}

impl Selection {
    pub fn new(
        method: Method,
        lambda: Option<f64>,
        indices: Vec<usize>,
        step_scores: Vec<f64>,
    ) -> Self {
        Self {
            method,
            lambda,
            indices,
            step_scores: Some(step_scores),
            negative_similarities: 0,
        }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.indices.len()
    }

    /// Checks distinctness, index range and step-score length.
    pub fn validate(&self, n_tokens: Option<usize>) -> Result<()> {
        if self.indices.is_empty() {
            return Err(Error::Validation("selection is empty".into()));
        }
        let mut seen = HashSet::with_capacity(self.indices.len());
        for &i in &self.indices {
            if !seen.insert(i) {
                return Err(Error::Validation(format!("duplicate index {i}")));
            }
            if let Some(n) = n_tokens {
                if i >= n {
                    return Err(Error::Validation(format!(
                        "index {i} out of range for {n} tokens"
                    )));
                }
            }
        }
        if let Some(n) = n_tokens {
            if self.indices.len() > n {
                return Err(Error::Budget {
                    k: self.indices.len(),
                    n,
                });
            }
        }
        if let Some(scores) = &self.step_scores {
            if scores.len() != self.indices.len() {
                return Err(Error::Validation(format!(
                    "{} step scores for {} indices",
                    scores.len(),
                    self.indices.len()
                )));
            }
        }
        if let Some(l) = self.lambda {
            if !(0.0..=1.0).contains(&l) {
                return Err(Error::Validation(format!("lambda {l} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// Membership mask of length `n_tokens`.
    pub fn mask(&self, n_tokens: usize) -> Vec<bool> {
        let mut mask = vec![false; n_tokens];
        for &i in &self.indices {
            mask[i] = true;
        }
        mask
    }
}
