//! Wall-clock comparison of the incremental and naive MMR selectors.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::selectors::{select_mmr, select_mmr_naive, SelectorConfig};
use crate::synth::{generate_manifold, ManifoldSpec};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n: usize,
    pub dim: usize,
    pub k: usize,
    pub reps: usize,
    pub seed: u64,
    pub lambda: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub fast: Vec<Duration>,
    pub naive: Vec<Duration>,
}

impl BenchReport {
    pub fn fast_median(&self) -> Duration {
        median(&self.fast)
    }

    pub fn naive_median(&self) -> Duration {
        median(&self.naive)
    }

    /// Naive median over fast median.
    pub fn speedup(&self) -> f64 {
        self.naive_median().as_secs_f64() / self.fast_median().as_secs_f64().max(1e-12)
    }
}

fn median(times: &[Duration]) -> Duration {
    let mut t = times.to_vec();
    t.sort_unstable();
    let n = t.len();
    if n % 2 == 1 {
        t[n / 2]
    } else {
        (t[n / 2 - 1] + t[n / 2]) / 2
    }
}

/// Generates a clustered fixture and times `reps` runs of each selector. The
/// outputs of the first run must agree exactly.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.reps == 0 {
        return Err(Error::InvalidParameter("reps must be at least 1".into()));
    }
    let spec = ManifoldSpec {
        n_tokens: cfg.n,
        dim: cfg.dim,
        n_clusters: cfg.n.min(16),
        rng_seed: cfg.seed,
        ..ManifoldSpec::fixture(cfg.seed)
    };
    let data = generate_manifold(&spec)?;
    let sc = SelectorConfig::new(cfg.k).with_lambda(cfg.lambda);
    let (f, w) = (&data.features, &data.importance);

    let mut report = BenchReport {
        fast: Vec::with_capacity(cfg.reps),
        naive: Vec::with_capacity(cfg.reps),
    };
    for rep in 0..cfg.reps {
        let t = Instant::now();
        let fast = std::hint::black_box(select_mmr(f, w, &sc)?);
        report.fast.push(t.elapsed());
        let t = Instant::now();
        let naive = std::hint::black_box(select_mmr_naive(f, w, &sc)?);
        report.naive.push(t.elapsed());
        if rep == 0 && (fast.indices != naive.indices || fast.step_scores != naive.step_scores) {
            return Err(Error::Validation(
                "incremental and naive MMR disagree".into(),
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_odd_even() {
        let ms = Duration::from_millis;
        assert_eq!(median(&[ms(3), ms(1), ms(2)]), ms(2));
        assert_eq!(
            median(&[ms(4), ms(1), ms(2), ms(3)]),
            Duration::from_micros(2500)
        );
    }

    #[test]
    fn small_bench_runs() {
        let r = run_bench(&BenchConfig {
            n: 128,
            dim: 8,
            k: 16,
            reps: 2,
            seed: 1,
            lambda: 0.5,
        })
        .unwrap();
        assert_eq!(r.fast.len(), 2);
        assert!(r.speedup() > 0.0);
    }

    #[test]
    fn zero_reps_rejected() {
        let cfg = BenchConfig {
            n: 8,
            dim: 2,
            k: 2,
            reps: 0,
            seed: 0,
            lambda: 0.5,
        };
        assert!(run_bench(&cfg).is_err());
    }
}
