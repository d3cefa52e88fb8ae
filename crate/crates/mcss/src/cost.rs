//! Node seeding costs: uniform (all ones) or per-node draws from Uniform(0,1].

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostMode {
    Uniform,
    RandomUniform { seed: u64 },
}

/// Per-node seeding costs. Additive over sets: C(A) = sum of member costs.
#[derive(Clone, Debug, PartialEq)]
pub struct CostModel {
    mode: CostMode,
    costs: Vec<f64>,
}

impl CostModel {
    pub fn mode(&self) -> CostMode {
        self.mode
    }

    pub fn is_uniform(&self) -> bool {
        self.mode == CostMode::Uniform
    }

    #[inline]
    pub fn node_cost(&self, v: u32) -> f64 {
        self.costs[v as usize]
    }

    pub fn set_cost(&self, nodes: &[u32]) -> f64 {
        nodes.iter().map(|&v| self.node_cost(v)).sum()
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// Hand-built cost vector for unit tests.
    #[cfg(test)]
    pub(crate) fn for_tests(costs: Vec<f64>) -> CostModel {
        CostModel {
            mode: CostMode::RandomUniform { seed: u64::MAX },
            costs,
        }
    }
}

/// Build a cost model for `g`.
///
/// Random mode draws each node's cost from Uniform(0,1] on a stream keyed by
/// (seed, node id), so regeneration with the same seed reproduces the vector
/// exactly and the draw for one node is independent of all others.
pub fn assign_costs(g: &Graph, mode: CostMode) -> Result<CostModel> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let costs = match mode {
        CostMode::Uniform => vec![1.0; g.node_count() as usize],
        CostMode::RandomUniform { seed } => (0..g.node_count())
            .map(|v| {
                Rng::for_stream(seed, rng::tag::COST, v as u64).next_f64_open_closed()
            })
            .collect(),
    };
    Ok(CostModel { mode, costs })
}
