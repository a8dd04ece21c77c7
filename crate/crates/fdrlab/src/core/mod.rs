//! Critical-value families, rejection engines and per-realization error
//! metrics.
//!
//! Everything here is a pure function of its inputs; the types are immutable
//! after construction and safe to share across threads.

mod procedures;
mod types;
mod values;

pub use procedures::{false_discovery_proportion, step_down, step_up, TestOutcome};
pub use types::{HypothesisPartition, PValueVector};
pub use values::{modified_level_limit, CriticalValues, RatioTrend};
