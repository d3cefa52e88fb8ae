//! Monte-Carlo greedy baseline with lazy re-evaluation.
//!
//! The classical simulation-driven greedy: marginal gains are estimated by
//! forward simulation and kept in a max-heap; a popped entry is accepted only
//! if it was computed against the current selection, otherwise it is
//! re-estimated and re-queued. Orders of magnitude slower than the RR-set
//! solvers; kept as the comparison baseline.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mcss::solution::{IterationTrace, SeedSolution};
use crate::propagation::{simulate_spread, TriggeringModel};
use crate::rng::{self, stream_seed};

struct Entry {
    gain: f64,
    estimate: f64,
    node: u32,
    round: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.gain == other.gain && self.node == other.node
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .partial_cmp(&other.gain)
            .expect("estimates are finite")
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Greedy cost-normalized selection driven by `sims_per_estimate` forward
/// simulations per spread estimate, stopping once the running estimate
/// reaches `lambda`. Each estimate consumes its own substream, so a fixed
/// seed reproduces the run exactly regardless of thread count.
pub fn celf_baseline(
    g: &Graph,
    model: TriggeringModel,
    costs: &CostModel,
    lambda: f64,
    sims_per_estimate: usize,
    seed: u64,
) -> Result<SeedSolution> {
    let start = Instant::now();
    if sims_per_estimate < 1 {
        return Err(Error::param("sims_per_estimate", "must be at least 1"));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::param("lambda", "must be finite and >= 0"));
    }
    let n = g.node_count();
    if (n as f64) < lambda {
        return Ok(SeedSolution::infeasible_with(0, 0, 0, Vec::new()));
    }

    let mut evals: u64 = 0;
    let estimate = |set: &[u32], evals: &mut u64| -> f64 {
        let s = stream_seed(seed, rng::tag::ESTIMATE, *evals);
        *evals += 1;
        simulate_spread(g, model, set, sims_per_estimate, s).0
    };

    let mut selected = vec![false; n as usize];
    let mut seeds: Vec<u32> = Vec::new();
    let mut current = 0.0f64;
    let mut heap = BinaryHeap::with_capacity(n as usize);
    let mut probe = Vec::with_capacity(n as usize + 1);
    for v in 0..n {
        probe.clear();
        probe.push(v);
        let est = estimate(&probe, &mut evals);
        heap.push(Entry {
            gain: (est.min(lambda) - 0.0) / costs.node_cost(v),
            estimate: est,
            node: v,
            round: 0,
        });
    }

    let mut round: u32 = 0;
    while current < lambda {
        let top = loop {
            let e = match heap.pop() {
                Some(e) => e,
                // all nodes selected: current = estimate(V) = n >= lambda
                None => break None,
            };
            if selected[e.node as usize] {
                continue;
            }
            if e.round == round {
                break Some(e);
            }
            probe.clear();
            probe.extend_from_slice(&seeds);
            probe.push(e.node);
            let est = estimate(&probe, &mut evals);
            heap.push(Entry {
                gain: (est.min(lambda) - current) / costs.node_cost(e.node),
                estimate: est,
                node: e.node,
                round,
            });
        };
        let Some(top) = top else { break };
        selected[top.node as usize] = true;
        seeds.push(top.node);
        current = top.estimate;
        round += 1;
    }

    let trace = vec![IterationTrace {
        rr_count: 0,
        log_inv_theta: None,
        alpha: None,
        candidate_size: seeds.len(),
        test: None,
    }];
    let mut sol = SeedSolution {
        cost: costs.set_cost(&seeds),
        coverage: current,
        seeds,
        rr_sets_generated: 0,
        budget: 0,
        iterations: round as usize,
        infeasible: false,
        trace,
        wall: Default::default(),
    };
    sol.wall = start.elapsed();
    Ok(sol)
}
