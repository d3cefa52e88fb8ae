//! Solver results and per-iteration audit traces.

use std::time::Duration;

use crate::mcss::feasibility::TestVerdict;

/// One row of a solver's iteration trace.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IterationTrace {
    /// Pool size after this iteration's growth phase.
    pub rr_count: usize,
    /// ln(1/theta) of the iteration's failure budget, when the solver halves
    /// theta across iterations.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log_inv_theta: Option<f64>,
    /// Relaxation in effect this iteration (adaptive solvers only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    /// Size of the candidate selection this iteration.
    pub candidate_size: usize,
    /// Feasibility-check outcome, when one ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub test: Option<TestVerdict>,
}

/// A solver result: the seed set plus enough bookkeeping to audit the run.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SeedSolution {
    /// Selected seeds in pick order; empty when `infeasible` is set.
    pub seeds: Vec<u32>,
    /// Total cost of the seeds.
    pub cost: f64,
    /// Sampled coverage of the seeds at selection time.
    pub coverage: f64,
    /// RR-sets actually generated by the run.
    pub rr_sets_generated: usize,
    /// The run's overall sample budget T; `rr_sets_generated` never exceeds it.
    pub budget: u64,
    /// Iterations of the outer solve loop.
    pub iterations: usize,
    /// The coverage target could not be met (target above n).
    pub infeasible: bool,
    pub trace: Vec<IterationTrace>,
    /// Wall time of the solve; excluded from serialized records so identical
    /// runs serialize identically.
    #[serde(skip, default)]
    pub wall: Duration,
}

impl SeedSolution {
    pub(crate) fn infeasible_with(
        budget: u64,
        rr: usize,
        iterations: usize,
        trace: Vec<IterationTrace>,
    ) -> Self {
        SeedSolution {
            seeds: Vec::new(),
            cost: 0.0,
            coverage: 0.0,
            rr_sets_generated: rr,
            budget,
            iterations,
            infeasible: true,
            trace,
            wall: Duration::ZERO,
        }
    }
}
