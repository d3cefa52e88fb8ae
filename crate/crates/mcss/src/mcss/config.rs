//! Solver run configuration and its domain checks.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::mcss::calculus::log_candidate_bound;

/// How the union-bound weight mu is chosen.
///
/// `Theory` uses the counting bound the guarantees actually require (computed
/// in log space); `Exponent(k)` uses mu = n^k, the cheaper setting used in the
/// original experiments, which can undercut the formal bound for large
/// thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuMode {
    Theory,
    Exponent(u32),
}

/// Parameters shared by the solver family.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Required influence spread.
    pub eta: f64,
    /// Overall failure probability.
    pub delta: f64,
    /// Relaxation for the bi-criteria solvers.
    pub alpha: f64,
    /// Lower-tail slack (general-cost solvers); sigma + gamma < alpha.
    pub sigma: f64,
    /// Upper-tail slack (general-cost solvers).
    pub gamma: f64,
    /// Slack for the uniform-cost one-shot solver.
    pub tau: f64,
    pub mu_mode: MuMode,
    /// Base seed for every random stream of the run.
    pub seed: u64,
    /// Worker threads for sampling and simulation.
    pub threads: usize,
    /// Cooperative cancellation: checked between sampling batches.
    pub deadline: Option<Instant>,
}

impl RunConfig {
    /// Experiment defaults: delta = 0.01, alpha = 0.2, sigma = gamma =
    /// alpha/3, tau = 0.02, mu = n^8.
    pub fn new(eta: f64, seed: u64) -> Self {
        let alpha = 0.2;
        RunConfig {
            eta,
            delta: 0.01,
            alpha,
            sigma: alpha / 3.0,
            gamma: alpha / 3.0,
            tau: 0.02,
            mu_mode: MuMode::Exponent(8),
            seed,
            threads: 1,
            deadline: None,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// (n - eta) / (2 n eta + eta): the slack below which the uniform-cost
    /// cardinality argument goes through.
    pub fn rho(&self, n: u32) -> f64 {
        let n = n as f64;
        (n - self.eta) / (2.0 * n * self.eta + self.eta)
    }

    /// ln(mu) for a run whose union bound must cover sets below
    /// `bound_threshold`.
    pub fn log_mu(&self, n: u32, bound_threshold: f64) -> Result<f64> {
        match self.mu_mode {
            MuMode::Exponent(k) => Ok(k as f64 * (n as f64).ln()),
            MuMode::Theory => log_candidate_bound(bound_threshold, n),
        }
    }

    pub(crate) fn validate_common(&self, n: u32) -> Result<()> {
        if !(self.eta > 0.0 && self.eta < n as f64) {
            return Err(Error::param(
                "eta",
                format!("must lie in (0, n={n}), got {}", self.eta),
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::param("delta", "must lie in (0, 1)"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::param("alpha", "must lie in (0, 1)"));
        }
        if self.threads == 0 {
            return Err(Error::param("threads", "must be at least 1"));
        }
        Ok(())
    }

    /// Checks for the general-cost solvers: sigma, gamma > 0 and
    /// sigma + gamma < alpha.
    pub(crate) fn validate_general_cost(&self, n: u32) -> Result<()> {
        self.validate_common(n)?;
        if !(self.sigma > 0.0) {
            return Err(Error::param("sigma", "must be positive"));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::param("gamma", "must be positive"));
        }
        if !(self.sigma + self.gamma < self.alpha) {
            return Err(Error::param(
                "sigma/gamma",
                format!(
                    "sigma + gamma = {} must be below alpha = {}",
                    self.sigma + self.gamma,
                    self.alpha
                ),
            ));
        }
        Ok(())
    }

    /// Checks for the uniform-cost one-shot solver. In theory mode the
    /// cardinality argument needs tau <= rho.
    pub(crate) fn validate_uniform_cost(&self, n: u32) -> Result<()> {
        self.validate_common(n)?;
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::param("tau", "must lie in (0, 1)"));
        }
        if self.mu_mode == MuMode::Theory && self.tau > self.rho(n) {
            return Err(Error::param(
                "tau",
                format!(
                    "theory mode requires tau <= (n - eta)/(2 n eta + eta) = {}",
                    self.rho(n)
                ),
            ));
        }
        Ok(())
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(Error::Timeout);
            }
        }
        Ok(())
    }
}
