//! Exact ground truth on tiny instances.
//!
//! Influence spread is computed by enumerating every realization of the
//! triggering randomness (live-edge worlds under IC, per-node triggering
//! choices under LT) and the exact minimum-cost seed set by exhaustive subset
//! search. Enumeration limits are enforced up front; everything here exists to
//! validate the sampling estimators and solvers, not to scale.

use std::collections::HashMap;

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::propagation::{ModelKind, TriggeringModel};

/// Enumeration ceilings checked before any work starts.
#[derive(Clone, Copy, Debug)]
pub struct ExactLimits {
    /// IC world enumeration is 2^m; cap on m.
    pub max_edges: u32,
    /// Subset search and reach masks are 2^n; cap on n.
    pub max_nodes: u32,
    /// LT enumerates the product of (in-degree + 1) over nodes; cap on it.
    pub max_lt_configs: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_edges: 20,
            max_nodes: 14,
            max_lt_configs: 1 << 20,
        }
    }
}

/// One realization of the triggering randomness: its probability and, for
/// every node, the bitmask of nodes reachable from it over live edges.
struct World {
    prob: f64,
    reach: Vec<u32>,
}

/// Exhaustive-enumeration oracle for a fixed (graph, model) pair.
///
/// Building the oracle enumerates all worlds once; spread queries are then
/// cheap sums over worlds and are memoized per queried subset.
pub struct ExactOracle<'g> {
    g: &'g Graph,
    worlds: Vec<World>,
    memo: HashMap<u32, f64>,
}

/// Reach masks via fixpoint over live edges (graphs may be cyclic).
fn reach_masks(n: usize, live: &[(u32, u32)]) -> Vec<u32> {
    let mut reach: Vec<u32> = (0..n).map(|v| 1u32 << v).collect();
    loop {
        let mut changed = false;
        for &(u, v) in live {
            let merged = reach[u as usize] | reach[v as usize];
            if merged != reach[u as usize] {
                reach[u as usize] = merged;
                changed = true;
            }
        }
        if !changed {
            return reach;
        }
    }
}

impl<'g> ExactOracle<'g> {
    pub fn build(g: &'g Graph, model: TriggeringModel, limits: &ExactLimits) -> Result<Self> {
        let n = g.node_count() as u64;
        if n > limits.max_nodes as u64 {
            return Err(Error::LimitExceeded {
                limit: "max_nodes",
                allowed: limits.max_nodes as u64,
                actual: n,
            });
        }
        let worlds = match model.kind() {
            ModelKind::Ic => Self::ic_worlds(g, limits)?,
            ModelKind::Lt => Self::lt_worlds(g, limits)?,
        };
        Ok(ExactOracle {
            g,
            worlds,
            memo: HashMap::new(),
        })
    }

    fn ic_worlds(g: &Graph, limits: &ExactLimits) -> Result<Vec<World>> {
        let m = g.edge_count();
        if m as u64 > limits.max_edges as u64 {
            return Err(Error::LimitExceeded {
                limit: "max_edges",
                allowed: limits.max_edges as u64,
                actual: m as u64,
            });
        }
        let edges: Vec<(u32, u32, f64)> = g.edges().collect();
        let n = g.node_count() as usize;
        let mut worlds = Vec::with_capacity(1usize << m);
        let mut live = Vec::with_capacity(m);
        for mask in 0u64..(1u64 << m) {
            let mut prob = 1.0;
            live.clear();
            for (i, &(u, v, p)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    prob *= p;
                    live.push((u, v));
                } else {
                    prob *= 1.0 - p;
                }
            }
            if prob == 0.0 {
                continue;
            }
            worlds.push(World {
                prob,
                reach: reach_masks(n, &live),
            });
        }
        Ok(worlds)
    }

    fn lt_worlds(g: &Graph, limits: &ExactLimits) -> Result<Vec<World>> {
        let n = g.node_count() as usize;
        let mut configs: u64 = 1;
        for v in 0..g.node_count() {
            configs = configs.saturating_mul(g.in_degree(v) as u64 + 1);
            if configs > limits.max_lt_configs {
                return Err(Error::LimitExceeded {
                    limit: "max_lt_configs",
                    allowed: limits.max_lt_configs,
                    actual: configs,
                });
            }
        }
        // Mixed-radix counter: digit 0 means "no trigger", digit i >= 1 picks
        // the (i-1)-th in-neighbor.
        let in_lists: Vec<Vec<(u32, f64)>> =
            (0..g.node_count()).map(|v| g.in_edges(v).collect()).collect();
        let none_prob: Vec<f64> = in_lists
            .iter()
            .map(|l| (1.0 - l.iter().map(|&(_, p)| p).sum::<f64>()).max(0.0))
            .collect();
        let mut digit = vec![0usize; n];
        let mut worlds = Vec::new();
        let mut live = Vec::with_capacity(n);
        loop {
            let mut prob = 1.0;
            live.clear();
            for v in 0..n {
                if digit[v] == 0 {
                    prob *= none_prob[v];
                } else {
                    let (u, p) = in_lists[v][digit[v] - 1];
                    prob *= p;
                    live.push((u, v as u32));
                }
                if prob == 0.0 {
                    break;
                }
            }
            if prob > 0.0 {
                worlds.push(World {
                    prob,
                    reach: reach_masks(n, &live),
                });
            }
            // advance the counter
            let mut v = 0;
            loop {
                if v == n {
                    return Ok(worlds);
                }
                digit[v] += 1;
                if digit[v] <= in_lists[v].len() {
                    break;
                }
                digit[v] = 0;
                v += 1;
            }
        }
    }

    fn mask_of(&self, nodes: &[u32]) -> u32 {
        let mut mask = 0u32;
        for &v in nodes {
            assert!(v < self.g.node_count());
            mask |= 1 << v;
        }
        mask
    }

    /// Exact influence spread of the subset encoded as a bitmask.
    pub fn spread_mask(&mut self, mask: u32) -> f64 {
        if let Some(&v) = self.memo.get(&mask) {
            return v;
        }
        // Fixed ascending world order so values reproduce bit-exactly.
        let mut total = 0.0;
        for w in &self.worlds {
            let mut reached = 0u32;
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros();
                reached |= w.reach[v as usize];
                rest &= rest - 1;
            }
            total += w.prob * reached.count_ones() as f64;
        }
        self.memo.insert(mask, total);
        total
    }

    /// Exact influence spread of a node set.
    pub fn spread(&mut self, nodes: &[u32]) -> f64 {
        let mask = self.mask_of(nodes);
        self.spread_mask(mask)
    }

    /// Exact feasibility of a node set against threshold `gamma`
    /// (boundary equality counts as feasible).
    pub fn feasible(&mut self, nodes: &[u32], gamma: f64) -> bool {
        self.spread(nodes) >= gamma
    }

    /// Exhaustive minimum-cost seed set with spread at least `eta`.
    ///
    /// Ties break toward smaller cardinality, then lexicographically smaller
    /// sorted node list.
    pub fn optimum(&mut self, costs: &CostModel, eta: f64) -> Result<(Vec<u32>, f64)> {
        let n = self.g.node_count();
        if !(eta > 0.0 && eta < n as f64) {
            return Err(Error::param("eta", format!("must lie in (0, {n}), got {eta}")));
        }
        let mut order: Vec<u32> = (1..(1u32 << n)).collect();
        let cost_of = |mask: u32| -> f64 {
            let mut c = 0.0;
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros();
                c += costs.node_cost(v);
                rest &= rest - 1;
            }
            c
        };
        order.sort_by(|&a, &b| {
            cost_of(a)
                .partial_cmp(&cost_of(b))
                .unwrap()
                .then(a.count_ones().cmp(&b.count_ones()))
                .then_with(|| lex_cmp(a, b))
        });
        for mask in order {
            if self.spread_mask(mask) >= eta {
                let nodes: Vec<u32> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                return Ok((nodes, cost_of(mask)));
            }
        }
        unreachable!("full node set has spread n > eta");
    }
}

/// Compare bitmasks as sorted node-id lists, element by element.
fn lex_cmp(mut a: u32, mut b: u32) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    while a != 0 && b != 0 {
        let la = a.trailing_zeros();
        let lb = b.trailing_zeros();
        match la.cmp(&lb) {
            Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            other => return other,
        }
    }
    a.count_ones().cmp(&b.count_ones())
}

/// One-shot exact spread; builds a throwaway oracle.
pub fn exact_spread(
    g: &Graph,
    model: TriggeringModel,
    nodes: &[u32],
    limits: &ExactLimits,
) -> Result<f64> {
    Ok(ExactOracle::build(g, model, limits)?.spread(nodes))
}

/// One-shot exact optimum; builds a throwaway oracle.
pub fn exact_optimum(
    g: &Graph,
    model: TriggeringModel,
    costs: &CostModel,
    eta: f64,
    limits: &ExactLimits,
) -> Result<(Vec<u32>, f64)> {
    ExactOracle::build(g, model, limits)?.optimum(costs, eta)
}

/// One-shot exact feasibility test against threshold `gamma`.
pub fn is_feasible(
    g: &Graph,
    model: TriggeringModel,
    nodes: &[u32],
    gamma: f64,
    limits: &ExactLimits,
) -> Result<bool> {
    Ok(ExactOracle::build(g, model, limits)?.feasible(nodes, gamma))
}
