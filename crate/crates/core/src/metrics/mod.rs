//! Diagnostics for comparing selections: importance retention, the Hopkins
//! clustering statistic, pairwise-angle histograms and Pareto analysis.

mod angles;
mod hopkins;
mod pareto;
mod retention;

pub use angles::{
    angle_degrees, angle_histogram, AngleHistogram, DEFAULT_ANGLE_BINS, DEFAULT_MAX_PAIRS,
};
pub use hopkins::{hopkins_statistic, HopkinsConfig, ReferenceMode, DEFAULT_HOPKINS_TRIALS};
pub use pareto::{dominance_report, pareto_frontier, DominanceReport, TradeoffPoint};
pub use retention::importance_retention;
