//! Greedy minimum-cost coverage over an RR-set pool.
//!
//! Repeatedly selects the node maximizing the cost-normalized truncated
//! marginal coverage gain until the sampled coverage reaches the target
//! `lambda`. Truncating at `lambda` keeps the objective monotone submodular,
//! which both justifies the lazy-evaluation variant and keeps the solution
//! from over-paying for overshoot.
//!
//! Two interchangeable implementations are provided: the production one with
//! lazy gain re-evaluation over a max-heap, and a plain reference that
//! recomputes every marginal gain each step. They share the gain expression
//! and tie-break (smaller node id), so their outputs are identical sets.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::propagation::RrCollection;

/// Result of a greedy cover run.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverOutcome {
    /// Selected nodes in pick order.
    pub nodes: Vec<u32>,
    /// RR-sets covered by the selection.
    pub hits: usize,
    /// Sampled coverage n * hits / |pool| at exit.
    pub coverage: f64,
    /// False only for the guard case n < lambda, where no selection can reach
    /// the target and an empty flagged outcome is returned.
    pub feasible: bool,
}

/// Cost-normalized truncated gain, in `n * hits` units.
///
/// Shared verbatim by both implementations so equal gains compare equal.
#[inline]
fn gain(new_hits: usize, hits: usize, n: f64, pool: f64, lambda: f64, cost: f64) -> f64 {
    let capped = (n * new_hits as f64).min(lambda * pool);
    (capped - n * hits as f64) / cost
}

struct Entry {
    gain: f64,
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
        // max-heap: larger gain first, then smaller node id
        self.gain
            .partial_cmp(&other.gain)
            .expect("gains are finite")
            .then_with(|| other.node.cmp(&self.node))
    }
}

struct CoverState<'c> {
    coll: &'c RrCollection,
    covered: Vec<bool>,
    uncovered_count: Vec<u32>,
    hits: usize,
}

impl<'c> CoverState<'c> {
    fn new(coll: &'c RrCollection) -> Self {
        let n = coll.node_count();
        let uncovered_count = (0..n)
            .map(|v| coll.sets_containing(v).len() as u32)
            .collect();
        CoverState {
            coll,
            covered: vec![false; coll.len()],
            uncovered_count,
            hits: 0,
        }
    }

    fn select(&mut self, node: u32) {
        for &ord in self.coll.sets_containing(node) {
            let ord = ord as usize;
            if !self.covered[ord] {
                self.covered[ord] = true;
                self.hits += 1;
                for &w in &self.coll.sets()[ord].members {
                    self.uncovered_count[w as usize] -= 1;
                }
            }
        }
    }
}

fn check_preconditions(coll: &RrCollection, lambda: f64) -> Result<Option<CoverOutcome>> {
    if coll.is_empty() {
        return Err(Error::EmptyCollection);
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::param("lambda", "must be finite and >= 0"));
    }
    if (coll.node_count() as f64) < lambda {
        return Ok(Some(CoverOutcome {
            nodes: Vec::new(),
            hits: 0,
            coverage: 0.0,
            feasible: false,
        }));
    }
    Ok(None)
}

/// Lazy-evaluation greedy cover. Every popped stale entry is re-evaluated
/// against the current selection before it can be accepted.
pub fn min_cost_cover(
    coll: &RrCollection,
    lambda: f64,
    costs: &CostModel,
) -> Result<CoverOutcome> {
    if let Some(early) = check_preconditions(coll, lambda)? {
        return Ok(early);
    }
    let n = coll.node_count() as f64;
    let pool = coll.len() as f64;
    let mut state = CoverState::new(coll);
    let mut selected = vec![false; coll.node_count() as usize];
    let mut nodes = Vec::new();

    let mut heap = BinaryHeap::with_capacity(coll.node_count() as usize);
    for v in 0..coll.node_count() {
        let du = state.uncovered_count[v as usize] as usize;
        if du > 0 {
            heap.push(Entry {
                gain: gain(du, 0, n, pool, lambda, costs.node_cost(v)),
                node: v,
                round: 0,
            });
        }
    }

    let mut round: u32 = 0;
    while !coll.count_meets(state.hits, lambda) {
        let top = loop {
            let e = heap.pop().ok_or_else(|| {
                Error::param("lambda", "coverage target unreachable (internal)")
            })?;
            if selected[e.node as usize] {
                continue;
            }
            if e.round == round {
                break e;
            }
            let du = state.uncovered_count[e.node as usize] as usize;
            let fresh = gain(
                state.hits + du,
                state.hits,
                n,
                pool,
                lambda,
                costs.node_cost(e.node),
            );
            heap.push(Entry {
                gain: fresh,
                node: e.node,
                round,
            });
        };
        selected[top.node as usize] = true;
        nodes.push(top.node);
        state.select(top.node);
        round += 1;
    }

    Ok(CoverOutcome {
        coverage: n * state.hits as f64 / pool,
        hits: state.hits,
        nodes,
        feasible: true,
    })
}

/// Reference cover: recomputes all marginal gains every step. Slow; exists to
/// validate the lazy variant (identical output by construction of the shared
/// gain and tie-break).
pub fn min_cost_cover_reference(
    coll: &RrCollection,
    lambda: f64,
    costs: &CostModel,
) -> Result<CoverOutcome> {
    if let Some(early) = check_preconditions(coll, lambda)? {
        return Ok(early);
    }
    let n = coll.node_count() as f64;
    let pool = coll.len() as f64;
    let mut state = CoverState::new(coll);
    let mut selected = vec![false; coll.node_count() as usize];
    let mut nodes = Vec::new();

    while !coll.count_meets(state.hits, lambda) {
        let mut best: Option<(f64, u32)> = None;
        for v in 0..coll.node_count() {
            if selected[v as usize] {
                continue;
            }
            let du = state.uncovered_count[v as usize] as usize;
            let g = gain(state.hits + du, state.hits, n, pool, lambda, costs.node_cost(v));
            // strict improvement keeps the smallest id among ties
            if best.is_none_or(|(bg, _)| g > bg) {
                best = Some((g, v));
            }
        }
        let (_, pick) =
            best.ok_or_else(|| Error::param("lambda", "coverage target unreachable (internal)"))?;
        selected[pick as usize] = true;
        nodes.push(pick);
        state.select(pick);
    }

    Ok(CoverOutcome {
        coverage: n * state.hits as f64 / pool,
        hits: state.hits,
        nodes,
        feasible: true,
    })
}
