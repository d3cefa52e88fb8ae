//! Minimum-cost seed selection: sample-size calculus, greedy coverage, the
//! statistical feasibility check, the solver family and the simulation-driven
//! baseline.

pub mod calculus;
pub mod celf;
pub mod config;
pub mod cover;
pub mod feasibility;
pub mod solution;
pub mod solvers;

pub use calculus::{
    log_candidate_bound, lower_tail_size, sample_budget, upper_tail_size, ThresholdSpec,
};
pub use celf::celf_baseline;
pub use config::{MuMode, RunConfig};
pub use cover::{min_cost_cover, min_cost_cover_reference, CoverOutcome};
pub use feasibility::{feasibility_test, test_thresholds, TestVerdict};
pub use solution::{IterationTrace, SeedSolution};
pub use solvers::{aauc, ateuc, bcgc, tegc};
