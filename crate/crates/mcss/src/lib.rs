//! Minimum-cost seed selection on social graphs.
//!
//! Given a directed graph with per-edge activation probabilities and per-node
//! seeding costs, find a cheap seed set whose expected influence spread under
//! the independent-cascade or linear-threshold model reaches a threshold.
//! Solvers estimate spread by reverse-reachable-set sampling with
//! concentration-bound pool sizing; an exhaustive-enumeration oracle provides
//! exact ground truth on tiny instances for validation.

// Parameter guards use negated comparisons (`!(x > 0.0)`) so NaN fails
// validation; the un-negated forms would accept it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cost;
pub mod error;
pub mod graph;
pub mod mcss;
pub mod oracle;
pub mod propagation;
pub mod rng;

pub use cost::{assign_costs, CostMode, CostModel};
pub use error::{Error, Result};
pub use graph::{load_edge_list, load_edge_list_path, Graph, Orientation, Weighting};
pub use mcss::{
    aauc, ateuc, bcgc, celf_baseline, tegc, MuMode, RunConfig, SeedSolution, ThresholdSpec,
};
pub use oracle::{exact_optimum, exact_spread, is_feasible, ExactLimits, ExactOracle};
pub use propagation::{
    sample_rr_set, simulate_spread, ModelKind, RrCollection, RrSet, TriggeringModel,
};
