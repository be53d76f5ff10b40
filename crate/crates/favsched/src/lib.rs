//! Online scheduling on machines with per-job favorite sets.
//!
//! Each job has a minimum processing time that it attains on its favorite
//! machines; every other machine runs it strictly slower. The crate bundles
//! the online algorithms for this model (greedy variants, the exponential
//! potential rule and its doubling wrapper, a rescaling preprocessor), an
//! exact branch-and-bound optimum oracle with fractional lower bounds,
//! adversarial instance generators that force the known worst-case ratios,
//! and an experiment harness with a CLI front end.

pub mod adversaries;
pub mod algorithms;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod value;

pub use model::{Instance, Job, LoadVec, Schedule, SortedLoads, SymmetricInstance};
pub use value::Rat;

/// Error type shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Structurally invalid instance, job, or schedule data.
    #[error("invalid model data: {0}")]
    Model(String),
    /// A 1-based job or machine index outside its range.
    #[error("index out of range: {0}")]
    Index(String),
    /// Bad algorithm configuration (e.g. gamma <= 1).
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Bad generator or CLI parameter.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An online algorithm returned an out-of-range machine.
    #[error("algorithm contract violation: {0}")]
    Contract(String),
    /// The exact oracle ran out of its node budget before proving optimality.
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    /// Operation requires the two-group symmetric structure.
    #[error("not a symmetric instance: {0}")]
    NotSymmetric(String),
    /// The oracle could not serve the request (e.g. missing witness).
    #[error("oracle unavailable: {0}")]
    Oracle(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
