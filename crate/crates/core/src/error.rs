use thiserror::Error;

use crate::approx::ApproxTrace;
use crate::interactions::Projection;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid product space: {0}")]
    InvalidSpace(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("distributions live on different spaces ({left:?} vs {right:?})")]
    SpaceMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("unit set must be nonempty")]
    EmptyUnitSet,

    #[error("unit {unit} out of range for a space of {units} units")]
    UnitOutOfRange { unit: usize, units: usize },

    #[error("invalid interaction family: {0}")]
    InvalidFamily(String),

    #[error("invalid poset map: {0}")]
    InvalidPosetMap(String),

    #[error(
        "no global maximizer exists: hub cardinality {hub} is below n_min = {n_min} (deficit {deficit})"
    )]
    NoMaximizer {
        hub: usize,
        n_min: usize,
        deficit: usize,
    },

    #[error("distribution is not a global maximizer of the multi-information")]
    NotMaximizer,

    #[error("{what}: size {size} exceeds the budget {limit}")]
    Budget {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("information projection did not converge after {iterations} iterations (gradient residual {residual:.3e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        best: Box<Projection>,
    },

    #[error("approximation sequence ended at KL {last:.3e}, above the threshold {threshold:.3e}")]
    ThresholdNotReached {
        threshold: f64,
        last: f64,
        trace: Box<ApproxTrace>,
    },

    #[error("support is not an exposed face of the family: {0}")]
    NotInClosure(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
