//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by critical-value construction, rejection engines,
/// model generators and estimators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A significance level was outside its admissible open interval.
    #[error("invalid level: alpha = {0} must lie in (0, 1)")]
    InvalidLevel(f64),

    /// A hypothesis count of zero was requested.
    #[error("invalid size: need at least one hypothesis")]
    InvalidSize,

    /// A level exceeded the largest value admitted by the modified
    /// step-down critical values.
    #[error("level too large: alpha = {alpha} exceeds the limit {limit}")]
    LevelTooLarge { alpha: f64, limit: f64 },

    /// A p-value was outside [0, 1] or not finite.
    #[error("invalid p-value at index {index}: {value}")]
    InvalidPValue { index: usize, value: f64 },

    /// A critical-value sequence violated 0 < a_1 <= ... <= a_m < 1.
    #[error("invalid critical values: {0}")]
    InvalidCriticalValues(String),

    /// p-value vector and critical values have different lengths.
    #[error("length mismatch: {expected} p-values vs {got} critical values")]
    LengthMismatch { expected: usize, got: usize },

    /// Outcome and partition describe different problem sizes.
    #[error("size mismatch: outcome has m = {outcome}, partition has m = {partition}")]
    SizeMismatch { outcome: usize, partition: usize },

    /// A partition index was out of range.
    #[error("partition index {index} out of range for m = {m}")]
    IndexOutOfRange { index: usize, m: usize },

    /// A generator was asked for zero hypotheses.
    #[error("empty problem: m0 + m1 must be at least 1")]
    EmptyProblem,

    /// Generator parameters violated a documented constraint.
    #[error("parameter constraint violated: {0}")]
    ParameterConstraint(String),

    /// The countermonotone copula is only defined for two coordinates.
    #[error("countermonotone copula requires m = 2, got m = {0}")]
    CountermonotoneRequiresTwo(usize),

    /// The exact integrator has no closed-form conditional law for this model.
    #[error("unsupported model for exact integration: {0}")]
    UnsupportedModel(String),

    /// The event decomposition needs both hypotheses to be true nulls.
    #[error("partition mismatch: expected m = 2 with both hypotheses true nulls")]
    PartitionMismatch,

    /// Probe levels must be strictly increasing within [0, 1].
    #[error("invalid levels: {0}")]
    InvalidLevels(String),

    /// The monotonicity probe is only defined for step-up procedures.
    #[error("monotonicity probe requires a step-up procedure")]
    ProbeRequiresStepUp,

    /// Estimation was asked for zero replicates.
    #[error("need at least one replicate")]
    NoReplicates,
}

pub type Result<T> = std::result::Result<T, Error>;
