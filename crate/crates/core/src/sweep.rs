//! Strategy × λ sweeps over the (Hopkins, retention) plane.

use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, ImportanceVector, DEFAULT_EPSILON};
use crate::metrics::{
    dominance_report, hopkins_statistic, importance_retention, pareto_frontier, DominanceReport,
    HopkinsConfig, TradeoffPoint,
};
use crate::selection::Method;
use crate::selectors::{select, SelectorConfig, DEFAULT_LAMBDA};

/// Parses `start:stop:step` into an inclusive grid. Values are computed as
/// `start + i·step` and rounded to 12 decimals so `0.1:0.9:0.1` yields the
/// decimal values one expects.
pub fn parse_lambda_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidParameter(format!("lambda grid '{spec}' is not start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(bad());
    }
    if start < 0.0 || stop > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda grid '{spec}' leaves [0, 1]"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let v = start + i as f64 * step;
            ((v * 1e12).round() / 1e12).min(stop)
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub k: usize,
    pub methods: Vec<Method>,
    pub lambdas: Vec<f64>,
    pub hopkins: HopkinsConfig,
    pub epsilon: f64,
    pub rng_seed: u64,
}

impl SweepConfig {
    pub fn new(k: usize, methods: Vec<Method>, lambdas: Vec<f64>) -> Self {
        Self {
            k,
            methods,
            lambdas,
            hopkins: HopkinsConfig::default(),
            epsilon: DEFAULT_EPSILON,
            rng_seed: 0,
        }
    }
}

/// Runs every (method, λ) cell, λ-free methods once. Rows come out in
/// method order, then ascending λ as given.
pub fn run_sweep(
    features: &FeatureMatrix,
    w: &ImportanceVector,
    cfg: &SweepConfig,
) -> Result<Vec<TradeoffPoint>> {
    if cfg.methods.is_empty() {
        return Err(Error::InvalidParameter("no methods to sweep".into()));
    }
    let mut points = Vec::new();
    for &method in &cfg.methods {
        let lambdas: Vec<Option<f64>> = if method.uses_lambda() {
            if cfg.lambdas.is_empty() {
                return Err(Error::InvalidParameter("empty lambda grid".into()));
            }
            cfg.lambdas.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for lambda in lambdas {
            let mut sc = SelectorConfig::new(cfg.k)
                .with_lambda(lambda.unwrap_or(DEFAULT_LAMBDA))
                .with_seed(cfg.rng_seed);
            sc.epsilon = cfg.epsilon;
            let selection = select(method, features, w, &sc)?;
            let hopkins = hopkins_statistic(features, &selection, &cfg.hopkins)?;
            let retention = importance_retention(w, &selection)?;
            points.push(TradeoffPoint::new(method, lambda, hopkins, retention));
        }
    }
    Ok(points)
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub mmr_frontier: Vec<TradeoffPoint>,
    /// MMR frontier against every hybrid row, when both are present.
    pub mmr_vs_hybrid: Option<DominanceReport>,
}

pub fn summarize(points: &[TradeoffPoint]) -> SweepSummary {
    let of = |m: Method| -> Vec<TradeoffPoint> {
        points.iter().filter(|p| p.method == m).cloned().collect()
    };
    let mmr = of(Method::Mmr);
    let hybrid = of(Method::Hybrid);
    let mmr_frontier = if mmr.is_empty() {
        Vec::new()
    } else {
        pareto_frontier(&mmr)
    };
    let mmr_vs_hybrid = (!mmr_frontier.is_empty() && !hybrid.is_empty())
        .then(|| dominance_report(&mmr_frontier, &hybrid));
    SweepSummary {
        mmr_frontier,
        mmr_vs_hybrid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_lambda_grid("0:1:0.5").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = parse_lambda_grid("0.1:0.9:0.1").unwrap();
        assert_eq!(g, vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]);
        assert_eq!(parse_lambda_grid("0.5:0.5:0.1").unwrap(), vec![0.5]);
        assert!(parse_lambda_grid("0:1").is_err());
        assert!(parse_lambda_grid("0:1:0").is_err());
        assert!(parse_lambda_grid("1:0:0.1").is_err());
        assert!(parse_lambda_grid("0:2:0.5").is_err());
        assert!(parse_lambda_grid("a:b:c").is_err());
    }

    #[test]
    fn lambda_free_methods_run_once() {
        let m = crate::synth::generate_manifold(&crate::synth::ManifoldSpec {
            n_tokens: 40,
            ..crate::synth::ManifoldSpec::fixture(3)
        })
        .unwrap();
        let cfg = SweepConfig::new(
            10,
            vec![Method::Importance, Method::Mmr, Method::Dpp],
            vec![0.0, 0.5, 1.0],
        );
        let pts = run_sweep(&m.features, &m.importance, &cfg).unwrap();
        assert_eq!(pts.len(), 5);
        assert_eq!(pts[0].lambda, None);
        assert_eq!(pts[1].lambda, Some(0.0));
        assert_eq!(pts[4].method, Method::Dpp);
    }
}
