//! Monte-Carlo estimation of FDR and FWER with standard errors, an exact
//! integrator for the two-hypothesis models, and structured probes for the
//! decomposition and monotonicity claims.
//!
//! Replicates are independent and may run on any number of workers; every
//! accumulation uses a reduction tree fixed by replicate index, so a report
//! depends only on (model, procedure, n_reps, seed).

mod exact;
mod monte_carlo;
mod probes;
mod procedure;

pub use exact::exact_fdr_m2_grid;
pub use monte_carlo::{monte_carlo, EstimateReport};
pub use probes::{event_decomposition_m2, monotonicity_probe, EventDecomposition};
pub use procedure::{CriticalFamily, ProcedureKind, ProcedureSpec};
