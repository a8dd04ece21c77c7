//! Step-up and step-down multiple-testing procedures, the joint p-value
//! models under which their false-discovery-rate bounds are tight, and
//! Monte-Carlo plus exact-integration machinery to verify every bound.
//!
//! The crate is organized in four layers:
//!
//! - [`core`]: critical-value families, the two rejection engines and the
//!   per-realization error metrics;
//! - [`models`]: seeded generators for independence and adversarial
//!   dependence models;
//! - [`estimation`]: Monte-Carlo estimators with standard errors, an exact
//!   two-hypothesis integrator, and structured probes;
//! - [`cli`]: the config-driven experiment runner behind the `fdrlab`
//!   binary.
//!
//! Everything is deterministic given a seed: replicate r of an experiment
//! draws from stream r of the seed, so results are independent of thread
//! count and scheduling.

#![forbid(unsafe_code)]

pub mod cli;
pub mod core;
pub mod error;
pub mod estimation;
pub mod models;

pub use error::{Error, Result};
