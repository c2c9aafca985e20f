//! Achievable-rate formulas for the message-key problem, the proof-level
//! rate feasibility check, and a randomized search over auxiliaries.

mod bounds;
mod fme;
mod frontier;
mod schemes;
mod search;
mod terms;

use thiserror::Error;

use crate::probkit::ProbError;

pub use bounds::{membership, Cap, EquivocationRegion, RegionBounds, MEMBERSHIP_TOL};
pub use fme::{fme_witness, FmeWitness};
pub use frontier::{convex_hull, pareto_frontier, sweep_weights, Frontier, FrontierPoint};
pub use schemes::{
    bassi_axes, equivocation_region, rate_bassi_joint, rate_bassi_separate, rate_gcp, region_a,
    region_per, separate_channel_term, separate_source_term, sum_bound_alt, CONSTRAINT_TOL,
    INDEPENDENCE_TOL,
};
pub use search::{search, search_multi, search_scheme, Scheme, SearchConfig, SearchOutcome};
pub use terms::InfoTerms;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error("joint has no axis {0:?}")]
    MissingAxis(String),
    #[error("inner layer depends on the state: I(U;S) = {mutual_information}")]
    DependentInnerLayer { mutual_information: f64 },
    #[error("constraint {name} violated: {lhs} > {rhs}")]
    InfeasibleConstraint {
        name: &'static str,
        lhs: f64,
        rhs: f64,
    },
    #[error("rates must be nonnegative, got ({r_m}, {r_k})")]
    NegativeRate { r_m: f64, r_k: f64 },
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("search space needs {cells} joint cells, budget is {budget}")]
    Budget { cells: usize, budget: usize },
}
