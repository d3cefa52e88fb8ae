//! The RR-set-sampling solver family for minimum-cost seed selection.
//!
//! Two general-cost bi-criteria solvers, one-shot (`bcgc`) and
//! trial-and-error (`tegc`), plus two uniform-cost solvers, one-shot
//! (`aauc`) and adaptive trial-and-error (`ateuc`). All four share the same
//! skeleton: size an RR-set pool from the tail bounds, run the greedy cover,
//! and (for the trial-and-error variants) alternate pool growth with a
//! sequential feasibility check, halving the per-iteration failure budget
//! so the total stays below delta.

use std::f64::consts::{LN_2, SQRT_2};
use std::time::Instant;

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mcss::calculus::{
    log_candidate_bound, lower_tail_size, sample_budget, ThresholdSpec,
};
use crate::mcss::config::RunConfig;
use crate::mcss::cover::{min_cost_cover, CoverOutcome};
use crate::mcss::feasibility::feasibility_test;
use crate::mcss::solution::{IterationTrace, SeedSolution};
use crate::propagation::{RrCollection, TriggeringModel};

const LN_3: f64 = 1.0986122886681098;

fn thread_pool(cfg: &RunConfig) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::param("threads", e.to_string()))
}

fn budget_usize(budget: u64) -> Result<usize> {
    usize::try_from(budget).map_err(|_| Error::param("budget", "sample budget overflows usize"))
}

fn finish(
    cover: CoverOutcome,
    costs: &CostModel,
    budget: u64,
    rr: usize,
    iterations: usize,
    trace: Vec<IterationTrace>,
    start: Instant,
) -> SeedSolution {
    // hard budget invariant: no run may generate more than its own T
    assert!(
        rr as u64 <= budget,
        "sample budget violated: {rr} > {budget}"
    );
    let mut sol = if cover.feasible {
        SeedSolution {
            cost: costs.set_cost(&cover.nodes),
            coverage: cover.coverage,
            seeds: cover.nodes,
            rr_sets_generated: rr,
            budget,
            iterations,
            infeasible: false,
            trace,
            wall: Default::default(),
        }
    } else {
        SeedSolution::infeasible_with(budget, rr, iterations, trace)
    };
    sol.wall = start.elapsed();
    sol
}

/// One-shot bi-criteria solver for general costs.
///
/// Sizes the pool so that (w.h.p.) no set of spread below (1-alpha)*eta shows
/// coverage (1-alpha+gamma)*eta, while the optimum still does, then covers to
/// (1-alpha+gamma)*eta in one greedy pass.
pub fn bcgc(
    g: &Graph,
    model: TriggeringModel,
    costs: &CostModel,
    cfg: &RunConfig,
) -> Result<SeedSolution> {
    let start = Instant::now();
    let n = g.node_count();
    cfg.validate_general_cost(n)?;
    let relaxed = (1.0 - cfg.alpha) * cfg.eta;
    let w1 = ThresholdSpec::new(
        relaxed,
        cfg.gamma / (1.0 - cfg.alpha),
        (2.0 / cfg.delta).ln() + cfg.log_mu(n, relaxed)?,
    )?;
    let w2 = ThresholdSpec::new(cfg.eta, cfg.sigma, (2.0 / cfg.delta).ln())?;
    let budget = sample_budget(&w1, &w2, n);
    let lambda = (1.0 - cfg.alpha + cfg.gamma) * cfg.eta;

    let pool = thread_pool(cfg)?;
    pool.install(|| {
        let mut coll = RrCollection::new(n, cfg.seed);
        coll.extend_to(g, model, budget_usize(budget)?, cfg.deadline)?;
        let cover = min_cost_cover(&coll, lambda, costs)?;
        let trace = vec![IterationTrace {
            rr_count: coll.len(),
            log_inv_theta: None,
            alpha: None,
            candidate_size: cover.nodes.len(),
            test: None,
        }];
        Ok(finish(cover, costs, budget, coll.len(), 1, trace, start))
    })
}

/// Trial-and-error solver for general costs.
///
/// Grows the pool lazily, re-covering and statistically checking the
/// candidate each round; stops early on a passing check or at the overall
/// budget T. Every RR-set the check generates is merged back into the pool.
pub fn tegc(
    g: &Graph,
    model: TriggeringModel,
    costs: &CostModel,
    cfg: &RunConfig,
) -> Result<SeedSolution> {
    let start = Instant::now();
    let n = g.node_count();
    cfg.validate_general_cost(n)?;
    let relaxed = (1.0 - cfg.alpha) * cfg.eta;
    let w1 = ThresholdSpec::new(
        relaxed,
        cfg.gamma / (1.0 - cfg.alpha),
        (6.0 / cfg.delta).ln() + log_candidate_bound(relaxed, n)?,
    )?;
    let w2 = ThresholdSpec::new(cfg.eta, cfg.sigma, (6.0 / cfg.delta).ln())?;
    let budget = sample_budget(&w1, &w2, n);
    let budget_sz = budget_usize(budget)?;
    let lambda = (1.0 - cfg.alpha + cfg.gamma) * cfg.eta;
    let kappa = cfg.gamma / (2.0 * (1.0 - cfg.alpha));

    let pool = thread_pool(cfg)?;
    pool.install(|| {
        let mut coll = RrCollection::new(n, cfg.seed);
        // theta = delta/3, halved every iteration; carried as ln(1/theta)
        let theta0_log = (3.0 / cfg.delta).ln();
        let mut trace: Vec<IterationTrace> = Vec::new();
        let mut iterations = 0usize;
        loop {
            let log_inv_theta = theta0_log + iterations as f64 * LN_2;
            iterations += 1;
            let grow_spec = ThresholdSpec::new(cfg.eta, cfg.sigma, log_inv_theta + LN_3)?;
            let target = (lower_tail_size(&grow_spec, n).ceil() as u64)
                .min(budget)
                .max(coll.len() as u64) as usize;
            coll.extend_to(g, model, target, cfg.deadline)?;
            let cover = min_cost_cover(&coll, lambda, costs)?;
            if coll.len() >= budget_sz {
                trace.push(IterationTrace {
                    rr_count: coll.len(),
                    log_inv_theta: Some(log_inv_theta),
                    alpha: None,
                    candidate_size: cover.nodes.len(),
                    test: None,
                });
                return Ok(finish(
                    cover,
                    costs,
                    budget,
                    coll.len(),
                    iterations,
                    trace,
                    start,
                ));
            }
            let theta = (-log_inv_theta).exp();
            let cap = budget_sz - coll.len();
            let verdict = feasibility_test(
                &mut coll,
                g,
                model,
                &cover.nodes,
                kappa,
                relaxed,
                2.0 * theta / 3.0,
                cap,
                cfg,
            )?;
            trace.push(IterationTrace {
                rr_count: coll.len(),
                log_inv_theta: Some(log_inv_theta),
                alpha: None,
                candidate_size: cover.nodes.len(),
                test: Some(verdict),
            });
            if verdict.pass {
                return Ok(finish(
                    cover,
                    costs,
                    budget,
                    coll.len(),
                    iterations,
                    trace,
                    start,
                ));
            }
        }
    })
}

/// One-shot solver for uniform costs: cover to (1+tau)*eta so that the result
/// is (w.h.p.) feasible for eta itself, with a logarithmic cardinality bound.
pub fn aauc(
    g: &Graph,
    model: TriggeringModel,
    costs: &CostModel,
    cfg: &RunConfig,
) -> Result<SeedSolution> {
    let start = Instant::now();
    let n = g.node_count();
    cfg.validate_uniform_cost(n)?;
    if !costs.is_uniform() {
        return Err(Error::NonUniformCosts { algo: "aauc" });
    }
    let w1 = ThresholdSpec::new(
        cfg.eta,
        cfg.tau,
        (2.0 / cfg.delta).ln() + cfg.log_mu(n, cfg.eta)?,
    )?;
    let w2 = ThresholdSpec::new(cfg.eta, cfg.tau, (2.0 / cfg.delta).ln())?;
    let budget = sample_budget(&w1, &w2, n);
    let lambda = (1.0 + cfg.tau) * cfg.eta;

    let pool = thread_pool(cfg)?;
    pool.install(|| {
        let mut coll = RrCollection::new(n, cfg.seed);
        coll.extend_to(g, model, budget_usize(budget)?, cfg.deadline)?;
        let cover = min_cost_cover(&coll, lambda, costs)?;
        let trace = vec![IterationTrace {
            rr_count: coll.len(),
            log_inv_theta: None,
            alpha: None,
            candidate_size: cover.nodes.len(),
            test: None,
        }];
        Ok(finish(cover, costs, budget, coll.len(), 1, trace, start))
    })
}

/// Adaptive trial-and-error solver for uniform costs.
///
/// Runs with a shrinking working relaxation: each round covers to
/// (1 +/- alpha)*eta, accepts the larger cover when it is at most twice the
/// smaller one (checking it statistically below the budget cap), and
/// otherwise divides alpha by sqrt(2). At the cap alpha drops to the
/// theoretical slack rho and the candidate is returned outright.
pub fn ateuc(
    g: &Graph,
    model: TriggeringModel,
    costs: &CostModel,
    cfg: &RunConfig,
) -> Result<SeedSolution> {
    let start = Instant::now();
    let n = g.node_count();
    cfg.validate_common(n)?;
    if !costs.is_uniform() {
        return Err(Error::NonUniformCosts { algo: "ateuc" });
    }
    let rho = cfg.rho(n);
    let w1 = ThresholdSpec::new(
        cfg.eta,
        rho,
        (6.0 / cfg.delta).ln() + log_candidate_bound(cfg.eta, n)?,
    )?;
    let w2 = ThresholdSpec::new(cfg.eta, rho, (6.0 / cfg.delta).ln())?;
    let budget = sample_budget(&w1, &w2, n);
    let budget_sz = budget_usize(budget)?;

    let pool = thread_pool(cfg)?;
    pool.install(|| {
        let mut coll = RrCollection::new(n, cfg.seed);
        let theta0_log = (3.0 / cfg.delta).ln();
        let mut log_inv_theta = theta0_log;
        let mut alpha = cfg.alpha;
        let mut trace: Vec<IterationTrace> = Vec::new();
        let mut iterations = 0usize;
        loop {
            iterations += 1;
            let grow_spec = ThresholdSpec::new(cfg.eta, alpha, log_inv_theta + LN_3)?;
            let target = (lower_tail_size(&grow_spec, n).ceil() as u64)
                .min(budget)
                .max(coll.len() as u64) as usize;
            coll.extend_to(g, model, target, cfg.deadline)?;
            let at_cap = coll.len() >= budget_sz;
            if at_cap {
                alpha = rho;
            }
            let lower = min_cost_cover(&coll, (1.0 - alpha) * cfg.eta, costs)?;
            let upper = min_cost_cover(&coll, (1.0 + alpha) * cfg.eta, costs)?;
            let mut row = IterationTrace {
                rr_count: coll.len(),
                log_inv_theta: Some(log_inv_theta),
                alpha: Some(alpha),
                candidate_size: upper.nodes.len(),
                test: None,
            };
            if upper.feasible && upper.nodes.len() <= 2 * lower.nodes.len() {
                if at_cap {
                    trace.push(row);
                    return Ok(finish(
                        upper,
                        costs,
                        budget,
                        coll.len(),
                        iterations,
                        trace,
                        start,
                    ));
                }
                let theta = (-log_inv_theta).exp();
                let cap = budget_sz - coll.len();
                let verdict = feasibility_test(
                    &mut coll,
                    g,
                    model,
                    &upper.nodes,
                    alpha / 2.0,
                    cfg.eta,
                    2.0 * theta / 3.0,
                    cap,
                    cfg,
                )?;
                row.rr_count = coll.len();
                row.test = Some(verdict);
                trace.push(row);
                if verdict.pass {
                    return Ok(finish(
                        upper,
                        costs,
                        budget,
                        coll.len(),
                        iterations,
                        trace,
                        start,
                    ));
                }
                log_inv_theta += LN_2;
                continue;
            }
            trace.push(row);
            if at_cap {
                // At the cap with alpha already at rho this state can only
                // repeat; surface the loop's fallthrough as the flagged
                // infeasible outcome.
                return Ok(SeedSolution::infeasible_with(
                    budget,
                    coll.len(),
                    iterations,
                    trace,
                )
                .with_wall(start.elapsed()));
            }
            alpha /= SQRT_2;
            log_inv_theta += LN_2;
        }
    })
}

impl SeedSolution {
    fn with_wall(mut self, wall: std::time::Duration) -> Self {
        self.wall = wall;
        self
    }
}
