//! Sample-size calculus for RR-set pools.
//!
//! `upper_tail_size` and `lower_tail_size` give the pool sizes at which the
//! coverage estimate of a fixed set is unlikely to overshoot or undershoot a
//! threshold, and `log_candidate_bound` bounds (in log space) the number of
//! infeasible candidate sets a union bound must cover. Failure probabilities
//! are carried as ln(1/theta) throughout: the union-bound thetas in play are
//! far below the smallest positive f64.

use crate::error::{Error, Result};

/// A (threshold, slack, confidence) triple driving the pool-size formulas.
/// The failure probability theta is stored as ln(1/theta).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ThresholdSpec {
    pub threshold: f64,
    pub beta: f64,
    pub log_inv_theta: f64,
}

impl ThresholdSpec {
    pub fn new(threshold: f64, beta: f64, log_inv_theta: f64) -> Result<Self> {
        if !(threshold > 0.0) || !threshold.is_finite() {
            return Err(Error::param("threshold", "must be positive and finite"));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::param("beta", "must lie in (0, 1)"));
        }
        if !(log_inv_theta >= 0.0) || !log_inv_theta.is_finite() {
            return Err(Error::param("log_inv_theta", "must be finite and >= 0"));
        }
        Ok(ThresholdSpec {
            threshold,
            beta,
            log_inv_theta,
        })
    }

    /// Convenience constructor for a plain theta in (0, 1].
    pub fn from_theta(threshold: f64, beta: f64, theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::param("theta", "must lie in (0, 1]"));
        }
        ThresholdSpec::new(threshold, beta, -theta.ln())
    }
}

/// Pool size beyond which a set with spread below the threshold rarely shows
/// sampled coverage above (1 + beta) * threshold.
pub fn upper_tail_size(w: &ThresholdSpec, n: u32) -> f64 {
    let n = n as f64;
    let g = w.threshold;
    let b = w.beta;
    let l = w.log_inv_theta;
    let quadratic = n * n / (2.0 * b * b * g * g) * l;
    let bernstein = 2.0 * n * (b + 3.0) / (3.0 * b * b * g) * l;
    quadratic.min(bernstein)
}

/// Pool size beyond which a set with spread at least the threshold rarely
/// shows sampled coverage below (1 - beta) * threshold.
pub fn lower_tail_size(w: &ThresholdSpec, n: u32) -> f64 {
    let n = n as f64;
    2.0 * n / (w.beta * w.beta * w.threshold) * w.log_inv_theta
}

/// ln of the counting bound (e*n/floor(g))^floor(g) on sets of spread below
/// `g`; the bound itself overflows f64 for any interesting instance, so only
/// the logarithm is ever materialized.
pub fn log_candidate_bound(g: f64, n: u32) -> Result<f64> {
    if !(g >= 1.0) {
        return Err(Error::param(
            "threshold",
            format!("candidate bound needs a threshold >= 1, got {g}"),
        ));
    }
    let floor = g.floor();
    Ok(floor * (1.0 + (n as f64).ln() - floor.ln()))
}

/// Overall RR-set budget: ceil of the larger of the two tail sizes.
pub fn sample_budget(w1: &ThresholdSpec, w2: &ThresholdSpec, n: u32) -> u64 {
    let t = upper_tail_size(w1, n).max(lower_tail_size(w2, n));
    t.ceil() as u64
}
