use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use tokenprune::bench::{run_bench, BenchConfig};
use tokenprune::io::{self, SelectionDocument};
use tokenprune::metrics::{
    angle_histogram, hopkins_statistic, importance_retention, HopkinsConfig, ReferenceMode,
    TradeoffPoint, DEFAULT_ANGLE_BINS, DEFAULT_HOPKINS_TRIALS, DEFAULT_MAX_PAIRS,
};
use tokenprune::selectors::{select, SelectorConfig, DEFAULT_LAMBDA};
use tokenprune::sweep::{parse_lambda_grid, run_sweep, summarize, SweepConfig};
use tokenprune::synth::{generate_manifold, ManifoldSpec};
use tokenprune::{Method, Result};

#[derive(Parser)]
#[command(
    name = "tokenprune",
    version,
    about = "Importance/diversity-aware token pruning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Importance,
    Fps,
    Hybrid,
    Mmr,
    MmrNaive,
    Dpp,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Importance => Method::Importance,
            MethodArg::Fps => Method::Fps,
            MethodArg::Hybrid => Method::Hybrid,
            MethodArg::Mmr => Method::Mmr,
            MethodArg::MmrNaive => Method::MmrNaive,
            MethodArg::Dpp => Method::Dpp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReferenceArg {
    Pool,
    Bbox,
}

impl From<ReferenceArg> for ReferenceMode {
    fn from(r: ReferenceArg) -> Self {
        match r {
            ReferenceArg::Pool => ReferenceMode::ResampleFromPool,
            ReferenceArg::Bbox => ReferenceMode::UniformInBbox,
        }
    }
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn lambda_in_range(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("lambda must lie in [0, 1], got {v}"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Select K tokens and write a selection document.
    Select {
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        importance: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_LAMBDA, value_parser = lambda_in_range)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write a PGM mask of the selection (requires --grid-w/--grid-h).
        #[arg(long, requires_all = ["grid_w", "grid_h"])]
        mask_out: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        grid_w: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        grid_h: Option<u64>,
    },
    /// Hopkins statistic and importance retention of a selection.
    Metrics {
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        importance: PathBuf,
        #[arg(long)]
        selection: PathBuf,
        #[arg(long, default_value_t = DEFAULT_HOPKINS_TRIALS, value_parser = positive_usize)]
        hopkins_trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "pool")]
        reference: ReferenceArg,
        /// Append-free CSV with the single (method, lambda, hopkins, retention) row.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Evaluate methods over a λ grid and write plot-ready CSV.
    Sweep {
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        importance: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "importance,fps,hybrid,mmr,dpp"
        )]
        methods: Vec<MethodArg>,
        /// start:stop:step
        #[arg(long, default_value = "0.1:0.9:0.1")]
        lambda_grid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_HOPKINS_TRIALS, value_parser = positive_usize)]
        hopkins_trials: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a clustered synthetic token set.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        clusters: u64,
        #[arg(long, default_value_t = 0.1)]
        spread: f64,
        #[arg(long, default_value_t = 1.0)]
        center_scale: f64,
        #[arg(long)]
        non_negative: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Writes <prefix>.fmat, <prefix>.fvec and <prefix>.labels.csv.
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Time incremental vs naive MMR on generated data.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_LAMBDA, value_parser = lambda_in_range)]
        lambda: f64,
    },
    /// Histogram of pairwise token angles.
    Angles {
        #[arg(long)]
        features: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ANGLE_BINS, value_parser = positive_usize)]
        bins: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_PAIRS, value_parser = positive_usize)]
        max_pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn load(
    features: &Path,
    importance: &Path,
) -> Result<(tokenprune::FeatureMatrix, tokenprune::ImportanceVector)> {
    let f = io::read_features(features)?;
    let w = io::read_importance(importance)?;
    w.check_paired(&f)?;
    Ok((f, w))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Select {
            features,
            importance,
            method,
            k,
            lambda,
            seed,
            out,
            mask_out,
            grid_w,
            grid_h,
        } => {
            let (f, w) = load(&features, &importance)?;
            let method = Method::from(method);
            let cfg = SelectorConfig::new(k as usize)
                .with_lambda(lambda)
                .with_seed(seed);
            let start = Instant::now();
            let selection = select(method, &f, &w, &cfg)?;
            let elapsed = start.elapsed();

            let mut doc = SelectionDocument::from_selection(&selection);
            doc.provenance = BTreeMap::from([
                ("features".to_string(), features.display().to_string()),
                ("importance".to_string(), importance.display().to_string()),
                ("lambda".to_string(), lambda.to_string()),
                ("epsilon".to_string(), cfg.epsilon.to_string()),
                ("seed".to_string(), seed.to_string()),
            ]);
            io::write_atomic(&out, io::render_selection(&doc)?.as_bytes())?;
            if let (Some(path), Some(gw), Some(gh)) = (mask_out, grid_w, grid_h) {
                io::write_mask_pgm(&selection, gw as usize, gh as usize, f.n_tokens(), path)?;
            }
            println!(
                "k={} method={} time_ms={:.3}",
                selection.k(),
                method,
                elapsed.as_secs_f64() * 1e3
            );
            if selection.negative_similarities > 0 {
                println!("negative_similarities={}", selection.negative_similarities);
            }
        }
        Command::Metrics {
            features,
            importance,
            selection,
            hopkins_trials,
            seed,
            reference,
            csv_out,
        } => {
            let (f, w) = load(&features, &importance)?;
            let sel = io::read_selection(&selection)?;
            let cfg = HopkinsConfig {
                rng_seed: seed,
                reference_mode: reference.into(),
                n_trials: hopkins_trials,
            };
            let hopkins = hopkins_statistic(&f, &sel, &cfg)?;
            let retention = importance_retention(&w, &sel)?;
            println!("hopkins={hopkins} retention={retention}");
            if let Some(path) = csv_out {
                let point = TradeoffPoint::new(sel.method, sel.lambda, hopkins, retention);
                io::write_sweep_csv(&[point], path)?;
            }
        }
        Command::Sweep {
            features,
            importance,
            k,
            methods,
            lambda_grid,
            seed,
            hopkins_trials,
            out,
        } => {
            let (f, w) = load(&features, &importance)?;
            let lambdas = parse_lambda_grid(&lambda_grid)?;
            let mut cfg = SweepConfig::new(
                k as usize,
                methods.into_iter().map(Method::from).collect(),
                lambdas,
            );
            cfg.rng_seed = seed;
            cfg.hopkins = HopkinsConfig::default()
                .with_seed(seed)
                .with_trials(hopkins_trials);
            let points = run_sweep(&f, &w, &cfg)?;
            io::write_sweep_csv(&points, &out)?;
            println!(
                "rows={} hopkins_trials={hopkins_trials} seed={seed}",
                points.len()
            );

            let summary = summarize(&points);
            if !summary.mmr_frontier.is_empty() {
                println!("mmr_frontier:");
                for p in &summary.mmr_frontier {
                    println!(
                        "  lambda={} hopkins={} retention={}",
                        p.lambda.map(io::format_sig9).unwrap_or_default(),
                        io::format_sig9(p.hopkins),
                        io::format_sig9(p.retention)
                    );
                }
            }
            if let Some(report) = summary.mmr_vs_hybrid {
                println!(
                    "mmr_dominates_hybrid={}/{} ({:.1}%)",
                    report.n_dominated,
                    report.n_total,
                    report.fraction() * 100.0
                );
            }
        }
        Command::Gen {
            n,
            dim,
            clusters,
            spread,
            center_scale,
            non_negative,
            seed,
            out_prefix,
        } => {
            let spec = ManifoldSpec {
                n_tokens: n as usize,
                dim: dim as usize,
                n_clusters: clusters as usize,
                cluster_spread: spread,
                center_scale,
                non_negative,
                rng_seed: seed,
            };
            let m = generate_manifold(&spec)?;
            io::write_features(&m.features, with_suffix(&out_prefix, ".fmat"))?;
            io::write_importance(&m.importance, with_suffix(&out_prefix, ".fvec"))?;
            let labels: String = m.labels.iter().map(|l| format!("{l}\n")).collect();
            io::write_atomic(&with_suffix(&out_prefix, ".labels.csv"), labels.as_bytes())?;
            println!(
                "n={n} dim={dim} clusters={clusters} seed={seed} retries={}",
                m.retries
            );
        }
        Command::Bench {
            n,
            dim,
            k,
            reps,
            seed,
            lambda,
        } => {
            let report = run_bench(&BenchConfig {
                n: n as usize,
                dim: dim as usize,
                k: k as usize,
                reps: reps as usize,
                seed,
                lambda,
            })?;
            println!("outputs_equal=true");
            println!(
                "mmr_median_ms={:.3}",
                report.fast_median().as_secs_f64() * 1e3
            );
            println!(
                "mmr_naive_median_ms={:.3}",
                report.naive_median().as_secs_f64() * 1e3
            );
            println!("speedup={:.2}", report.speedup());
        }
        Command::Angles {
            features,
            bins,
            max_pairs,
            seed,
            out,
        } => {
            let f = io::read_features(&features)?;
            let hist = angle_histogram(&f, bins, max_pairs, seed)?;
            io::write_angles_csv(&hist, &out)?;
            println!(
                "pairs={} mass_above_90={}",
                hist.n_pairs, hist.mass_above_90
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
