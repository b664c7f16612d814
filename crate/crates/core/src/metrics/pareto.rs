//! Pareto analysis on the (Hopkins, retention) plane, where lower Hopkins and
//! higher retention are both better.

use serde::{Deserialize, Serialize};

use crate::selection::Method;

/// One strategy/λ result on the trade-off plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    pub method: Method,
    pub lambda: Option<f64>,
    pub hopkins: f64,
    pub retention: f64,
}

impl TradeoffPoint {
    pub fn new(method: Method, lambda: Option<f64>, hopkins: f64, retention: f64) -> Self {
        Self {
            method,
            lambda,
            hopkins,
            retention,
        }
    }

    /// `self` is at least as good on both axes and strictly better on one.
    pub fn dominates(&self, other: &TradeoffPoint) -> bool {
        self.retention >= other.retention
            && self.hopkins <= other.hopkins
            && (self.retention > other.retention || self.hopkins < other.hopkins)
    }
}

/// Non-dominated points sorted by ascending Hopkins. Points with identical
/// coordinates collapse to the first one given.
pub fn pareto_frontier(points: &[TradeoffPoint]) -> Vec<TradeoffPoint> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (&points[a], &points[b]);
        p.hopkins
            .total_cmp(&q.hopkins)
            .then(q.retention.total_cmp(&p.retention))
            .then(a.cmp(&b))
    });
    let mut frontier: Vec<TradeoffPoint> = Vec::new();
    let mut best_retention = f64::NEG_INFINITY;
    for i in order {
        let p = &points[i];
        if p.retention > best_retention {
            best_retention = p.retention;
            frontier.push(p.clone());
        }
    }
    frontier
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    /// For each point of the second set, whether some point of the first set
    /// dominates it.
    pub dominated: Vec<bool>,
    pub n_dominated: usize,
    pub n_total: usize,
}

impl DominanceReport {
    pub fn fraction(&self) -> f64 {
        if self.n_total == 0 {
            0.0
        } else {
            self.n_dominated as f64 / self.n_total as f64
        }
    }

    pub fn all_dominated(&self) -> bool {
        self.n_total > 0 && self.n_dominated == self.n_total
    }
}

/// Checks every point of `b` against all points of `a`.
pub fn dominance_report(a: &[TradeoffPoint], b: &[TradeoffPoint]) -> DominanceReport {
    let dominated: Vec<bool> = b.iter().map(|q| a.iter().any(|p| p.dominates(q))).collect();
    let n_dominated = dominated.iter().filter(|&&d| d).count();
    DominanceReport {
        n_total: dominated.len(),
        n_dominated,
        dominated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(h: f64, i: f64) -> TradeoffPoint {
        TradeoffPoint::new(Method::Mmr, Some(0.5), h, i)
    }

    #[test]
    fn incomparable_points_both_kept() {
        let f = pareto_frontier(&[pt(0.8, 0.9), pt(0.2, 0.5)]);
        assert_eq!(f, vec![pt(0.2, 0.5), pt(0.8, 0.9)]);
    }

    #[test]
    fn strict_dominance() {
        assert_eq!(
            pareto_frontier(&[pt(0.3, 0.8), pt(0.2, 0.9)]),
            vec![pt(0.2, 0.9)]
        );
    }

    #[test]
    fn duplicates_collapse() {
        let f = pareto_frontier(&[pt(0.2, 0.9), pt(0.2, 0.9), pt(0.2, 0.8)]);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0], pt(0.2, 0.9));
    }

    #[test]
    fn report_examples() {
        let r = dominance_report(&[pt(0.1, 0.9)], &[pt(0.5, 0.5)]);
        assert!(r.all_dominated());
        let same = vec![pt(0.1, 0.9), pt(0.5, 0.95)];
        let r = dominance_report(&same, &same);
        assert_eq!(r.n_dominated, 0);
        assert_eq!(r.n_total, 2);
    }
}
