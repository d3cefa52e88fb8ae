//! Sequential statistical feasibility check for a candidate seed set.
//!
//! Draws RR-sets one at a time, counting hits on the candidate, and passes
//! the moment the hit count reaches a Chernoff-calibrated threshold. A hard
//! cap `M` bounds the draw count; a caller-supplied cap `L` additionally
//! limits generation so an enclosing trial-and-error loop never exceeds its
//! overall sample budget. Every generated RR-set is appended to the caller's
//! collection (with fresh ordinals from the collection's own seed stream) so
//! a failed check still contributes samples to the next round.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mcss::config::RunConfig;
use crate::propagation::{RrCollection, TriggeringModel};

/// Outcome of one feasibility check.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TestVerdict {
    pub pass: bool,
    /// First ordinal of the RR-sets this check appended.
    pub first_ordinal: usize,
    /// Number of RR-sets generated (<= min(M, L)).
    pub generated: usize,
    /// Hit count required for a pass (the threshold `ell`).
    pub hits_required: u64,
    /// Hard cap on draws (`M`).
    pub max_sets: u64,
    /// Hits accumulated when the check stopped.
    pub hits: u64,
}

/// Calibrated (ell, M) pair for slack `kappa`, threshold `gamma_thr` and
/// failure budget `beta`.
pub fn test_thresholds(kappa: f64, gamma_thr: f64, beta: f64, n: u32) -> (u64, u64) {
    let n = n as f64;
    let ell = (2.0 * (1.0 + kappa) * gamma_thr / ((2.0 + kappa) * n)
        + 8.0 * (3.0 + 2.0 * kappa) * (1.0 + kappa) / (3.0 * kappa * kappa)
            * (2.0 / beta).ln())
    .ceil() as u64;
    let m = ((2.0 + kappa) * n * ell as f64 / (2.0 * (1.0 + kappa) * gamma_thr)).floor() as u64;
    (ell, m)
}

/// Run the check for `candidate` against threshold `gamma_thr`.
///
/// When `cap <= M` the check cannot reach a verdict within its budget; it
/// generates exactly `cap` RR-sets (for the caller to reuse) and fails.
/// Otherwise it draws up to `M` sets, passing as soon as the hit count
/// reaches `ell`. One-sided guarantees: a set with spread at least
/// (1 + kappa) * gamma_thr passes, and one with spread below gamma_thr fails,
/// each with probability at least 1 - beta/2.
#[allow(clippy::too_many_arguments)]
pub fn feasibility_test(
    coll: &mut RrCollection,
    g: &Graph,
    model: TriggeringModel,
    candidate: &[u32],
    kappa: f64,
    gamma_thr: f64,
    beta: f64,
    cap: usize,
    cfg: &RunConfig,
) -> Result<TestVerdict> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::param("kappa", "must be positive and finite"));
    }
    if !(gamma_thr > 0.0 && gamma_thr <= g.node_count() as f64) {
        return Err(Error::param("gamma_thr", "must lie in (0, n]"));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::param("beta", "must lie in (0, 1)"));
    }
    let (ell, max_sets) = test_thresholds(kappa, gamma_thr, beta, g.node_count());
    let first_ordinal = coll.len();

    if cap as u64 <= max_sets {
        coll.extend_to(g, model, first_ordinal + cap, cfg.deadline)?;
        return Ok(TestVerdict {
            pass: false,
            first_ordinal,
            generated: cap,
            hits_required: ell,
            max_sets,
            hits: 0,
        });
    }

    let mut in_candidate = vec![false; g.node_count() as usize];
    for &v in candidate {
        in_candidate[v as usize] = true;
    }
    let mut hits: u64 = 0;
    let mut generated: usize = 0;
    let mut pass = false;
    // Draws are batched for speed; only the sets up to the stopping point are
    // appended, which is indistinguishable from one-at-a-time generation
    // because substreams are keyed by ordinal.
    const BATCH: usize = 4096;
    'draw: while (generated as u64) < max_sets {
        cfg.check_deadline()?;
        let want = BATCH.min((max_sets - generated as u64) as usize);
        let mut batch = coll.sample_batch(g, model, want);
        for (i, rr) in batch.iter().enumerate() {
            if rr.members.iter().any(|&v| in_candidate[v as usize]) {
                hits += 1;
                if hits == ell {
                    pass = true;
                    generated += i + 1;
                    batch.truncate(i + 1);
                    coll.push_batch(batch);
                    break 'draw;
                }
            }
        }
        generated += batch.len();
        coll.push_batch(batch);
    }
    Ok(TestVerdict {
        pass,
        first_ordinal,
        generated,
        hits_required: ell,
        max_sets,
        hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_edge_list, Orientation, Weighting};
    use crate::propagation::ModelKind;

    fn graph(text: &str) -> Graph {
        load_edge_list(text.as_bytes(), Weighting::Explicit, Orientation::Directed).unwrap()
    }

    #[test]
    fn threshold_hand_values() {
        // kappa=0.5, gamma=10, n=100, beta=0.1 -> ell=192, M=1600
        let (ell, m) = test_thresholds(0.5, 10.0, 0.1, 100);
        assert_eq!(ell, 192);
        assert_eq!(m, 1600);
    }

    #[test]
    fn zero_cap_fails_without_sampling() {
        let g = graph("0 1 0.5\n");
        let model = TriggeringModel::new(ModelKind::Ic, &g).unwrap();
        let mut coll = RrCollection::new(2, 3);
        let cfg = RunConfig::new(1.0, 3);
        let v = feasibility_test(&mut coll, &g, model, &[0], 0.5, 1.0, 0.1, 0, &cfg).unwrap();
        assert!(!v.pass);
        assert_eq!(v.generated, 0);
        assert_eq!(coll.len(), 0);
    }

    #[test]
    fn low_cap_generates_exactly_cap_and_fails() {
        let g = graph("0 1 0.5\n");
        let model = TriggeringModel::new(ModelKind::Ic, &g).unwrap();
        let mut coll = RrCollection::new(2, 3);
        let cfg = RunConfig::new(1.0, 3);
        let (_, m) = test_thresholds(0.5, 1.0, 0.1, 2);
        let cap = (m / 2) as usize;
        let v = feasibility_test(&mut coll, &g, model, &[0], 0.5, 1.0, 0.1, cap, &cfg).unwrap();
        assert!(!v.pass);
        assert_eq!(v.generated, cap);
        assert_eq!(coll.len(), cap);
    }

    #[test]
    fn full_node_set_passes_after_exactly_ell_sets() {
        // every RR-set hits V, so the hit count climbs one per draw
        let g = graph("0 1 0.5\n1 2 0.5\n");
        let model = TriggeringModel::new(ModelKind::Ic, &g).unwrap();
        let mut coll = RrCollection::new(3, 11);
        let cfg = RunConfig::new(1.0, 11);
        let (ell, m) = test_thresholds(0.4, 1.25, 0.2, 3);
        let v = feasibility_test(
            &mut coll,
            &g,
            model,
            &[0, 1, 2],
            0.4,
            1.25,
            0.2,
            m as usize + 1,
            &cfg,
        )
        .unwrap();
        assert!(v.pass);
        assert_eq!(v.generated as u64, ell);
        assert_eq!(v.hits, ell);
        assert_eq!(coll.len() as u64, ell);
    }

    #[test]
    fn appended_sets_follow_the_collection_stream() {
        let g = graph("0 1 0.5\n1 2 0.5\n");
        let model = TriggeringModel::new(ModelKind::Ic, &g).unwrap();
        let cfg = RunConfig::new(1.0, 21);
        let mut tested = RrCollection::new(3, 21);
        tested.extend_to(&g, model, 40, None).unwrap();
        let _ = feasibility_test(&mut tested, &g, model, &[0], 0.4, 1.25, 0.2, 500, &cfg)
            .unwrap();
        let mut plain = RrCollection::new(3, 21);
        plain.extend_to(&g, model, tested.len(), None).unwrap();
        assert_eq!(tested.sets(), plain.sets());
    }

    #[test]
    fn domain_violations() {
        let g = graph("0 1 0.5\n");
        let model = TriggeringModel::new(ModelKind::Ic, &g).unwrap();
        let cfg = RunConfig::new(1.0, 0);
        let mut coll = RrCollection::new(2, 0);
        assert!(
            feasibility_test(&mut coll, &g, model, &[0], 0.0, 1.0, 0.1, 10, &cfg).is_err()
        );
        assert!(
            feasibility_test(&mut coll, &g, model, &[0], 0.5, 0.0, 0.1, 10, &cfg).is_err()
        );
        assert!(
            feasibility_test(&mut coll, &g, model, &[0], 0.5, 1.0, 1.0, 10, &cfg).is_err()
        );
    }
}
