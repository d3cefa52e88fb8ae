//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured evidence (visible under `--nocapture`; the libtest ok/FAILED
//! line mirrors it). Statistical criteria use fixed seeds and conservative
//! error bands, so they are deterministic in practice.
//!
//! Criterion 8 runs on the wiki-Vote dataset when a copy exists at
//! `data/wiki-Vote.txt` (or `$MCSS_WIKIVOTE`); otherwise it substitutes a
//! deterministic synthetic graph of the same scale (7115 nodes, ~104K edges).

use std::time::{Duration, Instant};

use mcss::cost::{assign_costs, CostMode};
use mcss::graph::{load_edge_list, synthetic_preferential, Graph, Orientation, Weighting};
use mcss::mcss::{
    aauc, ateuc, bcgc, feasibility_test, log_candidate_bound, lower_tail_size, min_cost_cover,
    min_cost_cover_reference, sample_budget, tegc, test_thresholds, upper_tail_size, MuMode,
    RunConfig, SeedSolution, ThresholdSpec,
};
use mcss::oracle::{ExactLimits, ExactOracle};
use mcss::propagation::{ModelKind, RrCollection, TriggeringModel};
use mcss::rng::{stream_seed, Rng};

fn graph(text: &str) -> Graph {
    load_edge_list(text.as_bytes(), Weighting::Explicit, Orientation::Directed).unwrap()
}

fn ic(g: &Graph) -> TriggeringModel {
    TriggeringModel::new(ModelKind::Ic, g).unwrap()
}

/// a -> b -> c with p = 0.5; exact spread of {a} is 1.75.
const PATH3: &str = "0 1 0.5\n1 2 0.5\n";

fn budget_line(name: &str, elapsed: Duration, cap: Duration) {
    assert!(
        elapsed <= cap,
        "{name}: took {elapsed:?}, budget {cap:?}"
    );
    println!("criterion {name}: PASS ({elapsed:?} <= {cap:?})");
}

#[test]
fn criterion_1_estimator_unbiasedness() {
    let t0 = Instant::now();
    let g = graph(PATH3);
    let model = ic(&g);
    let exact = 1.75;
    let collections = 200;
    let pool = 500;
    let mut means = Vec::with_capacity(collections);
    for c in 0..collections {
        let mut coll = RrCollection::new(3, 0xC1 + c as u64);
        coll.extend_to(&g, model, pool, None).unwrap();
        means.push(coll.coverage_estimate(&[0]).unwrap());
    }
    let grand = means.iter().sum::<f64>() / collections as f64;
    let var = means.iter().map(|m| (m - grand).powi(2)).sum::<f64>() / (collections - 1) as f64;
    let se = (var / collections as f64).sqrt();
    assert!(
        (grand - exact).abs() <= 4.0 * se,
        "grand mean {grand} vs oracle {exact}, se {se}"
    );
    println!("  unbiasedness: grand mean {grand:.5} vs 1.75, se {se:.5}");
    budget_line("1 (estimator unbiasedness)", t0.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_2_formula_fixtures() {
    let t0 = Instant::now();
    let rel = |got: f64, expect: f64| (got - expect).abs() <= 1e-6 * expect.abs();

    // n=1000, threshold=100, beta=0.2, theta=0.05
    let w = ThresholdSpec::from_theta(100.0, 0.2, 0.05).unwrap();
    let ut = upper_tail_size(&w, 1000);
    assert!(rel(ut, 1597.7238792287949), "ut = {ut}");
    assert!((ut - 1597.72).abs() <= 0.01);
    let lt = lower_tail_size(&w, 1000);
    assert!(rel(lt, 1497.866136776995), "lt = {lt}");
    assert!((lt - 1497.87).abs() <= 0.01);
    assert_eq!(sample_budget(&w, &w, 1000), 1598);

    let ld = log_candidate_bound(2.9, 10).unwrap();
    assert!(rel(ld, 5.218875824868201), "log_D = {ld}");
    assert!(rel(log_candidate_bound(1.0, 10).unwrap(), 1.0 + 10f64.ln()));
    assert!(rel(log_candidate_bound(16.0, 16).unwrap(), 16.0));

    let (ell, m) = test_thresholds(0.5, 10.0, 0.1, 100);
    assert_eq!((ell, m), (192, 1600));

    println!("  fixtures: ut {ut:.6}, lt {lt:.6}, T 1598, log_D {ld:.6}, (ell, M) (192, 1600)");
    budget_line("2 (formula fixtures)", t0.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_3_lazy_greedy_equals_reference() {
    let t0 = Instant::now();
    let mut rng = Rng::new(0xC3);
    for round in 0u64..500 {
        let n = 2 + rng.next_below(29) as u32; // n <= 30
        let g = synthetic_preferential(n, 1 + rng.next_below(4) as u32, 7000 + round);
        let model = ic(&g);
        let pool = 1 + rng.next_below(200) as usize; // |coll| <= 200
        let mut coll = RrCollection::new(n, 9000 + round);
        coll.extend_to(&g, model, pool, None).unwrap();
        let costs = if round % 2 == 0 {
            assign_costs(&g, CostMode::Uniform).unwrap()
        } else {
            assign_costs(&g, CostMode::RandomUniform { seed: round }).unwrap()
        };
        let lambda = rng.next_f64() * n as f64;
        let lazy = min_cost_cover(&coll, lambda, &costs).unwrap();
        let reference = min_cost_cover_reference(&coll, lambda, &costs).unwrap();
        assert_eq!(
            lazy.nodes, reference.nodes,
            "round {round}: n={n} pool={pool} lambda={lambda}"
        );
    }
    budget_line("3 (lazy = reference greedy, 500 instances)", t0.elapsed(), Duration::from_secs(30));
}

struct SmallInstance {
    name: &'static str,
    text: &'static str,
    eta: f64,
}

/// Oracle-solvable instances, n <= 10 and few enough edges for fast world
/// enumeration.
fn small_instances() -> Vec<SmallInstance> {
    vec![
        SmallInstance {
            name: "star4",
            text: "0 1 1.0\n0 2 1.0\n0 3 1.0\n",
            eta: 3.0,
        },
        SmallInstance {
            name: "path5",
            text: "0 1 0.6\n1 2 0.6\n2 3 0.6\n3 4 0.6\n",
            eta: 2.0,
        },
        SmallInstance {
            name: "twohub8",
            text: "0 2 0.9\n0 3 0.9\n0 4 0.9\n1 5 0.9\n1 6 0.9\n1 7 0.9\n0 1 0.1\n1 0 0.1\n",
            eta: 4.5,
        },
        SmallInstance {
            name: "cycle6",
            text: "0 1 0.5\n1 2 0.5\n2 3 0.5\n3 4 0.5\n4 5 0.5\n5 0 0.5\n",
            eta: 2.5,
        },
        SmallInstance {
            name: "wide10",
            text: "0 1 0.7\n0 2 0.7\n1 3 0.5\n2 4 0.5\n4 5 0.6\n5 6 0.4\n6 7 0.8\n7 8 0.3\n8 9 0.9\n3 9 0.2\n9 0 0.1\n2 7 0.35\n",
            eta: 4.0,
        },
    ]
}

/// Success-rate floor: (1 - delta) minus three binomial standard errors.
fn rate_floor(delta: f64, runs: usize) -> f64 {
    (1.0 - delta) - 3.0 * (delta * (1.0 - delta) / runs as f64).sqrt()
}

const RUNS: usize = 50;
const DELTA: f64 = 0.2;

fn gc_config(eta: f64, seed: u64) -> RunConfig {
    let mut cfg = RunConfig::new(eta, seed);
    cfg.delta = DELTA;
    cfg
}

#[test]
fn criterion_4_general_cost_feasibility_and_ratio() {
    let t0 = Instant::now();
    let floor = rate_floor(DELTA, RUNS);
    for inst in small_instances() {
        let g = graph(inst.text);
        let model = ic(&g);
        let costs = assign_costs(&g, CostMode::RandomUniform { seed: 0x6C0 }).unwrap();
        let mut oracle = ExactOracle::build(&g, model, &ExactLimits::default()).unwrap();
        let (_, c_opt) = oracle.optimum(&costs, inst.eta).unwrap();
        let cfg0 = gc_config(inst.eta, 0);
        let ratio =
            1.0 + ((1.0 - cfg0.sigma) / (cfg0.alpha - cfg0.gamma - cfg0.sigma)).ln();
        let relaxed = (1.0 - cfg0.alpha) * inst.eta;
        for (algo_name, algo) in [
            ("bcgc", bcgc as fn(_, _, _, &RunConfig) -> mcss::Result<SeedSolution>),
            ("tegc", tegc as fn(_, _, _, &RunConfig) -> mcss::Result<SeedSolution>),
        ] {
            let mut ok = 0;
            for run in 0..RUNS {
                let seed = stream_seed(0xC4, algo_name.len() as u64, run as u64);
                let cfg = gc_config(inst.eta, seed);
                let sol = algo(&g, model, &costs, &cfg).unwrap();
                assert!(
                    sol.rr_sets_generated as u64 <= sol.budget,
                    "criterion 6 violated on {} {}", inst.name, algo_name
                );
                assert!(!sol.infeasible);
                let feasible = oracle.feasible(&sol.seeds, relaxed);
                let cheap = sol.cost <= ratio * c_opt + 1e-9;
                if feasible && cheap {
                    ok += 1;
                }
            }
            let rate = ok as f64 / RUNS as f64;
            println!(
                "  {} {}: success {}/{} (floor {:.3}, ratio bound {:.3} * C_opt {:.3})",
                inst.name, algo_name, ok, RUNS, floor, ratio, c_opt
            );
            assert!(
                rate >= floor,
                "{} {}: success rate {rate} below floor {floor}",
                inst.name,
                algo_name
            );
        }
    }
    budget_line("4 (general-cost feasibility + ratio)", t0.elapsed(), Duration::from_secs(300));
}

#[test]
fn criterion_5_uniform_cost_cardinality_bounds() {
    let t0 = Instant::now();
    let floor = rate_floor(DELTA, RUNS);
    for inst in small_instances() {
        let g = graph(inst.text);
        let n = g.node_count() as f64;
        let model = ic(&g);
        let costs = assign_costs(&g, CostMode::Uniform).unwrap();
        let mut oracle = ExactOracle::build(&g, model, &ExactLimits::default()).unwrap();
        let (opt_set, _) = oracle.optimum(&costs, inst.eta).unwrap();
        let s_opt = opt_set.len() as f64;
        let log_term = (n * inst.eta / (n - inst.eta)).ln().ceil();
        let cfg0 = gc_config(inst.eta, 0);
        // the cardinality argument needs tau below the instance slack
        assert!(cfg0.tau <= cfg0.rho(g.node_count()), "{}", inst.name);
        for (algo_name, algo, bound) in [
            (
                "aauc",
                aauc as fn(_, _, _, &RunConfig) -> mcss::Result<SeedSolution>,
                log_term * s_opt + 2.0,
            ),
            (
                "ateuc",
                ateuc as fn(_, _, _, &RunConfig) -> mcss::Result<SeedSolution>,
                2.0 * log_term * s_opt + 2.0,
            ),
        ] {
            let mut ok = 0;
            for run in 0..RUNS {
                let seed = stream_seed(0xC5, algo_name.len() as u64, run as u64);
                let cfg = gc_config(inst.eta, seed);
                let sol = algo(&g, model, &costs, &cfg).unwrap();
                assert!(
                    sol.rr_sets_generated as u64 <= sol.budget,
                    "criterion 6 violated on {} {}", inst.name, algo_name
                );
                assert!(!sol.infeasible, "{} {} run {run}", inst.name, algo_name);
                let feasible = oracle.feasible(&sol.seeds, inst.eta);
                let small = sol.seeds.len() as f64 <= bound;
                if feasible && small {
                    ok += 1;
                }
            }
            let rate = ok as f64 / RUNS as f64;
            println!(
                "  {} {}: success {}/{} (floor {:.3}, |S| bound {}, |S_opt| {})",
                inst.name, algo_name, ok, RUNS, floor, bound, s_opt
            );
            assert!(
                rate >= floor,
                "{} {}: success rate {rate} below floor {floor}",
                inst.name,
                algo_name
            );
        }
    }
    budget_line("5 (uniform-cost cardinality bounds)", t0.elapsed(), Duration::from_secs(300));
}

// Criterion 6 (the budget invariant) is asserted inside every solver run via
// `SeedSolution` construction and re-checked per run in criteria 4, 5 and 8;
// this test re-states it over a fresh spread of runs so it has its own line.
#[test]
fn criterion_6_sample_budget_invariant() {
    let t0 = Instant::now();
    for inst in small_instances() {
        let g = graph(inst.text);
        let model = ic(&g);
        let uniform = assign_costs(&g, CostMode::Uniform).unwrap();
        let random = assign_costs(&g, CostMode::RandomUniform { seed: 5 }).unwrap();
        for run in 0..10u64 {
            let cfg = gc_config(inst.eta, 0xC6 ^ run);
            for sol in [
                bcgc(&g, model, &random, &cfg).unwrap(),
                tegc(&g, model, &random, &cfg).unwrap(),
                aauc(&g, model, &uniform, &cfg).unwrap(),
                ateuc(&g, model, &uniform, &cfg).unwrap(),
            ] {
                assert!(
                    sol.rr_sets_generated as u64 <= sol.budget,
                    "{}: {} > {}",
                    inst.name,
                    sol.rr_sets_generated,
                    sol.budget
                );
            }
        }
    }
    budget_line("6 (rr_sets_generated <= T, zero tolerance)", t0.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_7_feasibility_test_guarantees() {
    let t0 = Instant::now();
    let g = graph(PATH3);
    let model = ic(&g);
    // f({a}) = 1.75 = (1+kappa)*threshold with kappa=0.4, threshold=1.25;
    // f({c}) = 1 < threshold. beta = 0.2.
    let kappa = 0.4;
    let threshold = 1.25;
    let beta = 0.2;
    let (ell, m) = test_thresholds(kappa, threshold, beta, 3);
    assert_eq!((ell, m), (205, 421), "hand-derived thresholds");
    let trials = 400;
    let floor = (1.0 - beta / 2.0)
        - 3.0 * ((beta / 2.0) * (1.0 - beta / 2.0) / trials as f64).sqrt();

    let mut passes = 0;
    let mut fails = 0;
    for trial in 0..trials {
        let cfg = RunConfig::new(1.25, 0);
        let mut coll = RrCollection::new(3, stream_seed(0xC7, 0, trial));
        let v = feasibility_test(
            &mut coll, &g, model, &[0], kappa, threshold, beta, m as usize + 1, &cfg,
        )
        .unwrap();
        assert!(v.generated as u64 <= m);
        if v.pass {
            passes += 1;
        }
        let mut coll = RrCollection::new(3, stream_seed(0xC7, 1, trial));
        let v = feasibility_test(
            &mut coll, &g, model, &[2], kappa, threshold, beta, m as usize + 1, &cfg,
        )
        .unwrap();
        if !v.pass {
            fails += 1;
        }
    }
    let pass_rate = passes as f64 / trials as f64;
    let fail_rate = fails as f64 / trials as f64;
    println!("  pass rate {pass_rate:.4}, fail rate {fail_rate:.4}, floor {floor:.4}");
    assert!(pass_rate >= floor, "pass rate {pass_rate} < {floor}");
    assert!(fail_rate >= floor, "fail rate {fail_rate} < {floor}");
    budget_line("7 (sequential test one-sided guarantees)", t0.elapsed(), Duration::from_secs(120));
}

/// wiki-Vote when on disk; otherwise a deterministic synthetic stand-in of
/// the same scale (7115 nodes, ~104K directed edges), WC-weighted either way.
fn medium_graph() -> (Graph, &'static str) {
    let candidates = [
        std::env::var("MCSS_WIKIVOTE").unwrap_or_default(),
        "data/wiki-Vote.txt".to_string(),
        "../../data/wiki-Vote.txt".to_string(),
    ];
    for path in candidates.iter().filter(|p| !p.is_empty()) {
        if std::path::Path::new(path).exists() {
            let file = std::fs::File::open(path).unwrap();
            let g = load_edge_list(file, Weighting::WeightedCascade, Orientation::Directed)
                .unwrap();
            return (g, "wiki-Vote");
        }
    }
    (synthetic_preferential(7115, 15, 20260808), "synthetic-7115")
}

#[test]
fn criterion_8_medium_scale_sanity() {
    let t0 = Instant::now();
    let (g, source) = medium_graph();
    println!("  graph: {source} (n={}, m={})", g.node_count(), g.edge_count());
    let model = ic(&g);
    let costs = assign_costs(&g, CostMode::RandomUniform { seed: 1 }).unwrap();
    let per_run_cap = Duration::from_secs(300);
    let threads = 2;

    for eta in [100.0, 500.0] {
        let relaxed = 0.8 * eta;
        // once-for-all solver at the experiment defaults (mu = n^8)
        let mut cfg = RunConfig::new(eta, 1).with_threads(threads);
        let sol = bcgc(&g, model, &costs, &cfg).unwrap();
        assert!(sol.wall <= per_run_cap, "bcgc eta={eta}: {:?}", sol.wall);
        let (mean, se) = mcss::propagation::simulate_spread(&g, model, &sol.seeds, 10_000, 0xE8);
        assert!(
            mean >= relaxed - 3.0 * se,
            "bcgc eta={eta}: spread {mean} below {relaxed} - 3*{se}"
        );
        println!(
            "  bcgc eta={eta}: rr {} (T={}), spread {mean:.2}±{se:.3}, wall {:?}",
            sol.rr_sets_generated, sol.budget, sol.wall
        );

        // Budget of the once-for-all solver when its pool is sized by the
        // same counting bound the trial-and-error solver uses. The lazy
        // solver's saving claim is only well-posed against this matched
        // budget: at mu = n^8 the once-for-all pool is smaller than what the
        // sequential check alone needs (see the bcgc run above).
        cfg.mu_mode = MuMode::Theory;
        let w1 = ThresholdSpec::new(
            relaxed,
            cfg.gamma / (1.0 - cfg.alpha),
            (2.0 / cfg.delta).ln() + cfg.log_mu(g.node_count(), relaxed).unwrap(),
        )
        .unwrap();
        let w2 = ThresholdSpec::new(eta, cfg.sigma, (2.0 / cfg.delta).ln()).unwrap();
        let matched_budget = sample_budget(&w1, &w2, g.node_count());

        let mut lazy_wins = 0;
        for rep in 0..10u64 {
            let mut cfg = RunConfig::new(eta, 100 + rep).with_threads(threads);
            cfg.delta = 0.01;
            let sol = tegc(&g, model, &costs, &cfg).unwrap();
            assert!(sol.wall <= per_run_cap, "tegc eta={eta} rep={rep}: {:?}", sol.wall);
            assert!(sol.rr_sets_generated as u64 <= sol.budget, "criterion 6");
            let (mean, se) =
                mcss::propagation::simulate_spread(&g, model, &sol.seeds, 10_000, 0xE9 + rep);
            assert!(
                mean >= relaxed - 3.0 * se,
                "tegc eta={eta} rep={rep}: spread {mean} below {relaxed} - 3*{se}"
            );
            if sol.rr_sets_generated as u64 <= matched_budget {
                lazy_wins += 1;
            }
            if rep == 0 {
                println!(
                    "  tegc eta={eta} rep0: rr {} vs matched budget {}, spread {mean:.2}, wall {:?}",
                    sol.rr_sets_generated, matched_budget, sol.wall
                );
            }
        }
        println!("  tegc eta={eta}: lazy wins {lazy_wins}/10 paired seeds");
        assert!(
            lazy_wins >= 8,
            "eta={eta}: trial-and-error beat the matched budget on only {lazy_wins}/10 seeds"
        );
    }
    budget_line("8 (medium-scale sanity)", t0.elapsed(), Duration::from_secs(1500));
}

#[test]
fn criterion_9_determinism() {
    let t0 = Instant::now();
    // (a) byte-identical records across two CLI invocations, single-threaded
    let dir = std::env::temp_dir().join("mcss_acceptance_det");
    std::fs::create_dir_all(&dir).unwrap();
    let edge_path = dir.join("det_graph.txt");
    let g = synthetic_preferential(400, 5, 99);
    let mut text = String::new();
    for (u, v, _) in g.edges() {
        text.push_str(&format!("{u} {v}\n"));
    }
    std::fs::write(&edge_path, text).unwrap();
    let run = || {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_mcss"))
            .args([
                "solve",
                "--graph",
                edge_path.to_str().unwrap(),
                "--weighting",
                "wc",
                "--algo",
                "tegc",
                "--eta",
                "40",
                "--delta",
                "0.1",
                "--costs",
                "random:3",
                "--seed",
                "9",
                "--threads",
                "1",
            ])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "records differ across invocations");

    // (b) pool contents are independent of worker thread count
    let model = ic(&g);
    let sample_with = |threads: usize| -> RrCollection {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let mut coll = RrCollection::new(g.node_count(), 4242);
            coll.extend_to(&g, model, 20_000, None).unwrap();
            coll
        })
    };
    let single = sample_with(1);
    let quad = sample_with(4);
    assert_eq!(single.sets(), quad.sets(), "collections differ by thread count");
    println!("  identical records across runs; identical pools at 1 vs 4 threads");
    budget_line("9 (determinism)", t0.elapsed(), Duration::from_secs(60));
}
