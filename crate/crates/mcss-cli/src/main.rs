//! Command-line front end: dataset loading, solver invocation, exact-oracle
//! utilities and benchmark sweeps with machine-readable output.

mod record;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant, SystemTime};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mcss::cost::{assign_costs, CostMode, CostModel};
use mcss::graph::{self, Graph, Orientation, Weighting};
use mcss::mcss::{aauc, ateuc, bcgc, celf_baseline, tegc, MuMode, RunConfig, SeedSolution};
use mcss::oracle::{ExactLimits, ExactOracle};
use mcss::propagation::{simulate_spread, ModelKind, TriggeringModel};
use mcss::rng::{stream_seed, tag};

use record::{sig6, ConfigEcho, EvalRecord, RunRecord, SolutionRecord, TimingRecord};

#[derive(Parser)]
#[command(
    name = "mcss",
    about = "Minimum-cost seed selection on social graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one solver and print a RunRecord.
    Solve(SolveArgs),
    /// Exact ground truth on tiny instances (spread / optimum / feasible).
    Oracle(OracleArgs),
    /// Sweep thresholds and repeats, streaming CSV rows.
    Bench(BenchArgs),
    /// Parse an edge list and write a binary graph cache.
    Cache(CacheArgs),
    /// Generate a synthetic scale-free edge list.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WeightingArg {
    /// weighted cascade: p(u,v) = 1/d_in(v), lines are `u v`
    Wc,
    /// lines are `u v p`
    Explicit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    Directed,
    /// insert both directions of every line before weighting
    Undirected,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Ic,
    Lt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Bcgc,
    Tegc,
    Aauc,
    Ateuc,
    Celf,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Bcgc => "bcgc",
            AlgoArg::Tegc => "tegc",
            AlgoArg::Aauc => "aauc",
            AlgoArg::Ateuc => "ateuc",
            AlgoArg::Celf => "celf",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Edge-list text file or binary cache (auto-detected).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "wc")]
    weighting: WeightingArg,
    #[arg(long, value_enum, default_value = "directed")]
    orientation: OrientationArg,
}

impl GraphArgs {
    fn load(&self) -> anyhow::Result<Graph> {
        load_graph(&self.graph, self.weighting.into(), self.orientation.into())
            .with_context(|| format!("loading {}", self.graph.display()))
    }

    fn weighting_str(&self) -> &'static str {
        match self.weighting {
            WeightingArg::Wc => "wc",
            WeightingArg::Explicit => "explicit",
        }
    }

    fn orientation_str(&self) -> &'static str {
        match self.orientation {
            OrientationArg::Directed => "directed",
            OrientationArg::Undirected => "undirected",
        }
    }
}

impl From<WeightingArg> for Weighting {
    fn from(w: WeightingArg) -> Self {
        match w {
            WeightingArg::Wc => Weighting::WeightedCascade,
            WeightingArg::Explicit => Weighting::Explicit,
        }
    }
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Directed => Orientation::Directed,
            OrientationArg::Undirected => Orientation::UndirectedAsBidirected,
        }
    }
}

fn parse_mu_mode(s: &str) -> Result<MuMode, String> {
    if s == "theory" {
        return Ok(MuMode::Theory);
    }
    if let Some(k) = s.strip_prefix("exp:") {
        let k: u32 = k.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
        return Ok(MuMode::Exponent(k));
    }
    Err(format!("expected `theory` or `exp:K`, got `{s}`"))
}

fn parse_costs(s: &str) -> Result<CostMode, String> {
    if s == "uniform" {
        return Ok(CostMode::Uniform);
    }
    if let Some(seed) = s.strip_prefix("random:") {
        let seed: u64 = seed.parse().map_err(|_| format!("bad seed in `{s}`"))?;
        return Ok(CostMode::RandomUniform { seed });
    }
    Err(format!("expected `uniform` or `random:SEED`, got `{s}`"))
}

#[derive(Args, Clone)]
struct SolverParams {
    /// Required influence spread.
    #[arg(long)]
    eta: f64,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    /// Lower-tail slack for bcgc/tegc; defaults to alpha/3.
    #[arg(long)]
    sigma: Option<f64>,
    /// Upper-tail slack for bcgc/tegc; defaults to alpha/3.
    #[arg(long)]
    gamma: Option<f64>,
    /// Slack for aauc.
    #[arg(long, default_value_t = 0.02)]
    tau: f64,
    /// `theory` or `exp:K` (mu = n^K).
    #[arg(long, default_value = "exp:8", value_parser = parse_mu_mode)]
    mu_mode: MuMode,
    /// `uniform` or `random:SEED`.
    #[arg(long, default_value = "uniform", value_parser = parse_costs)]
    costs: CostMode,
    #[arg(long, value_enum, default_value = "ic")]
    model: ModelArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: MCSS_THREADS or all cores).
    #[arg(long, env = "MCSS_THREADS")]
    threads: Option<usize>,
    /// Monte-Carlo simulations for the evaluation block.
    #[arg(long, default_value_t = 10_000)]
    eval_sims: usize,
}

impl SolverParams {
    fn run_config(&self, seed: u64, deadline: Option<Instant>) -> RunConfig {
        let threads = self
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
        RunConfig {
            eta: self.eta,
            delta: self.delta,
            alpha: self.alpha,
            sigma: self.sigma.unwrap_or(self.alpha / 3.0),
            gamma: self.gamma.unwrap_or(self.alpha / 3.0),
            tau: self.tau,
            mu_mode: self.mu_mode,
            seed,
            threads,
            deadline,
        }
    }

    fn mu_mode_str(&self) -> String {
        match self.mu_mode {
            MuMode::Theory => "theory".into(),
            MuMode::Exponent(k) => format!("exp:{k}"),
        }
    }

    fn costs_str(&self) -> String {
        match self.costs {
            CostMode::Uniform => "uniform".into(),
            CostMode::RandomUniform { seed } => format!("random:{seed}"),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[command(flatten)]
    params: SolverParams,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Include wall-clock timing in the record (breaks byte-for-byte
    /// reproducibility of the output).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum, default_value = "ic")]
    model: ModelArg,
    #[arg(long, default_value_t = 20)]
    max_edges: u32,
    #[arg(long, default_value_t = 14)]
    max_nodes: u32,
    #[arg(long, default_value_t = 1 << 20)]
    max_lt_configs: u64,
    #[command(subcommand)]
    op: OracleOp,
}

#[derive(Subcommand)]
enum OracleOp {
    /// Exact influence spread of a seed set.
    Spread {
        /// Comma-separated original node ids.
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
    },
    /// Exhaustive minimum-cost seed set reaching --eta.
    Optimum {
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value = "uniform", value_parser = parse_costs)]
        costs: CostMode,
    },
    /// Exact feasibility of a seed set against --threshold.
    Feasible {
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
        #[arg(long)]
        threshold: f64,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Algorithms to sweep.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    algos: Vec<AlgoArg>,
    /// Thresholds to sweep.
    #[arg(long, value_delimiter = ',', required = true)]
    eta_list: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    /// Wall-clock cap per run, in minutes.
    #[arg(long, default_value_t = 500.0)]
    time_limit_min: f64,
    #[command(flatten)]
    params: BenchParams,
}

/// Solver params minus eta (bench sweeps it).
#[derive(Args, Clone)]
struct BenchParams {
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 0.02)]
    tau: f64,
    #[arg(long, default_value = "exp:8", value_parser = parse_mu_mode)]
    mu_mode: MuMode,
    #[arg(long, default_value = "uniform", value_parser = parse_costs)]
    costs: CostMode,
    #[arg(long, value_enum, default_value = "ic")]
    model: ModelArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "MCSS_THREADS")]
    threads: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    eval_sims: usize,
}

impl BenchParams {
    fn solver_params(&self, eta: f64) -> SolverParams {
        SolverParams {
            eta,
            alpha: self.alpha,
            delta: self.delta,
            sigma: self.sigma,
            gamma: self.gamma,
            tau: self.tau,
            mu_mode: self.mu_mode,
            costs: self.costs,
            model: self.model,
            seed: self.seed,
            threads: self.threads,
            eval_sims: self.eval_sims,
        }
    }
}

#[derive(Args)]
struct CacheArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    nodes: u32,
    #[arg(long, default_value_t = 15)]
    out_degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
}

/// Load either an edge-list text file or a binary cache, sniffing the magic.
fn load_graph(
    path: &Path,
    weighting: Weighting,
    orientation: Orientation,
) -> anyhow::Result<Graph> {
    let mut file = std::fs::File::open(path)?;
    let mut magic = [0u8; 8];
    let got = file.read(&mut magic)?;
    if got == 8 && &magic == b"MCSSGRA1" {
        let file = std::fs::File::open(path)?;
        return Ok(graph::read_cache(std::io::BufReader::new(file))?);
    }
    Ok(graph::load_edge_list_path(path, weighting, orientation)?)
}

fn build_model(kind: ModelArg, g: &Graph) -> anyhow::Result<TriggeringModel> {
    let kind = match kind {
        ModelArg::Ic => ModelKind::Ic,
        ModelArg::Lt => ModelKind::Lt,
    };
    Ok(TriggeringModel::new(kind, g)?)
}

/// Evaluation threshold each algorithm promises: the relaxed target for the
/// bi-criteria solvers and the baseline, the full target for uniform costs.
fn eval_threshold(algo: AlgoArg, cfg: &RunConfig) -> f64 {
    match algo {
        AlgoArg::Bcgc | AlgoArg::Tegc | AlgoArg::Celf => (1.0 - cfg.alpha) * cfg.eta,
        AlgoArg::Aauc | AlgoArg::Ateuc => cfg.eta,
    }
}

fn run_solver(
    algo: AlgoArg,
    g: &Graph,
    model: TriggeringModel,
    costs: &CostModel,
    cfg: &RunConfig,
    eval_sims: usize,
) -> anyhow::Result<SeedSolution> {
    let sol = match algo {
        AlgoArg::Bcgc => bcgc(g, model, costs, cfg)?,
        AlgoArg::Tegc => tegc(g, model, costs, cfg)?,
        AlgoArg::Aauc => aauc(g, model, costs, cfg)?,
        AlgoArg::Ateuc => ateuc(g, model, costs, cfg)?,
        AlgoArg::Celf => celf_baseline(
            g,
            model,
            costs,
            (1.0 - cfg.alpha) * cfg.eta,
            eval_sims,
            cfg.seed,
        )?,
    };
    Ok(sol)
}

/// One full solve: run, evaluate, assemble the record.
fn solve_once(
    graph_args: &GraphArgs,
    algo: AlgoArg,
    params: &SolverParams,
    g: &Graph,
    timing: bool,
    deadline: Option<Instant>,
) -> anyhow::Result<(RunRecord, SeedSolution)> {
    let started = SystemTime::now()
        .duration_since(SystemTime::UNIX_EPOCH)
        .map_or(0.0, |d| d.as_secs_f64());
    let t0 = Instant::now();
    let cfg = params.run_config(params.seed, deadline);
    let model = build_model(params.model, g)?;
    let costs = assign_costs(g, params.costs)?;
    let sol = run_solver(algo, g, model, &costs, &cfg, params.eval_sims)?;

    // evaluation honors the same thread budget as the solve
    let eval_pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| anyhow!("threads: {e}"))?;
    let eval_seed = stream_seed(cfg.seed, tag::ESTIMATE, u64::MAX);
    let (mean, stderr) = eval_pool
        .install(|| simulate_spread(g, model, &sol.seeds, params.eval_sims, eval_seed));
    let threshold = eval_threshold(algo, &cfg);
    let hub = (0..g.node_count())
        .max_by_key(|&v| g.out_edges(v).count())
        .unwrap_or(0);
    let (hub_spread, _) = eval_pool.install(|| {
        simulate_spread(
            g,
            model,
            &[hub],
            params.eval_sims,
            stream_seed(cfg.seed, tag::ESTIMATE, u64::MAX - 1),
        )
    });
    let evaluation = EvalRecord {
        spread_mean: mean,
        spread_stderr: stderr,
        num_sims: params.eval_sims,
        threshold,
        feasible: !sol.infeasible && mean >= threshold - 3.0 * stderr,
        max_node_spread: hub_spread,
        max_out_degree_node: g.original_id(hub),
    };

    let record = RunRecord {
        config: ConfigEcho {
            algorithm: algo.name().into(),
            graph: graph_args.graph.display().to_string(),
            weighting: graph_args.weighting_str().into(),
            orientation: graph_args.orientation_str().into(),
            model: format!("{}", model.kind()),
            eta: cfg.eta,
            alpha: cfg.alpha,
            delta: cfg.delta,
            sigma: cfg.sigma,
            gamma: cfg.gamma,
            tau: cfg.tau,
            mu_mode: params.mu_mode_str(),
            costs: params.costs_str(),
            seed: cfg.seed,
            threads: cfg.threads,
            eval_sims: params.eval_sims,
        },
        solution: SolutionRecord {
            seeds: sol.seeds.iter().map(|&v| g.original_id(v)).collect(),
            seed_indexes: sol.seeds.clone(),
            cost: sol.cost,
            coverage: sol.coverage,
            rr_sets_generated: sol.rr_sets_generated,
            budget: sol.budget,
            iterations: sol.iterations,
            infeasible: sol.infeasible,
            trace: sol.trace.clone(),
        },
        evaluation,
        timing: timing.then(|| TimingRecord {
            started_unix_s: started,
            solver_wall_s: sol.wall.as_secs_f64(),
            total_wall_s: t0.elapsed().as_secs_f64(),
        }),
    };
    Ok((record, sol))
}

fn cmd_solve(args: SolveArgs) -> anyhow::Result<u8> {
    let g = args.graph.load()?;
    let (record, _) = solve_once(&args.graph, args.algo, &args.params, &g, args.timing, None)?;
    match args.format {
        FormatArg::Json => println!("{}", serde_json::to_string(&record)?),
        FormatArg::Csv => {
            println!(
                "algorithm,eta,seed,cost,coverage,rr_sets,budget,iterations,infeasible,\
                 spread_mean,spread_stderr,eval_feasible,seeds"
            );
            let seeds = record
                .solution
                .seeds
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            println!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                record.config.algorithm,
                sig6(record.config.eta),
                record.config.seed,
                sig6(record.solution.cost),
                sig6(record.solution.coverage),
                record.solution.rr_sets_generated,
                record.solution.budget,
                record.solution.iterations,
                record.solution.infeasible,
                sig6(record.evaluation.spread_mean),
                sig6(record.evaluation.spread_stderr),
                record.evaluation.feasible,
                seeds
            );
        }
    }
    if record.solution.infeasible || !record.evaluation.feasible {
        return Ok(2);
    }
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> anyhow::Result<u8> {
    let g = args.graph.load()?;
    let model = build_model(args.model, &g)?;
    let limits = ExactLimits {
        max_edges: args.max_edges,
        max_nodes: args.max_nodes,
        max_lt_configs: args.max_lt_configs,
    };
    let mut oracle = ExactOracle::build(&g, model, &limits)?;
    let resolve = |ids: &[u64]| -> anyhow::Result<Vec<u32>> {
        ids.iter()
            .map(|&orig| {
                (0..g.node_count())
                    .find(|&v| g.original_id(v) == orig)
                    .ok_or_else(|| anyhow!("unknown node id {orig}"))
            })
            .collect()
    };
    let out = match &args.op {
        OracleOp::Spread { seeds } => {
            let dense = resolve(seeds)?;
            let value = oracle.spread(&dense);
            serde_json::json!({ "op": "spread", "seeds": seeds, "spread": value })
        }
        OracleOp::Optimum { eta, costs } => {
            let cost_model = assign_costs(&g, *costs)?;
            let (set, cost) = oracle.optimum(&cost_model, *eta)?;
            let orig: Vec<u64> = set.iter().map(|&v| g.original_id(v)).collect();
            serde_json::json!({
                "op": "optimum",
                "eta": eta,
                "set": orig,
                "cost": cost,
                "spread": oracle.spread(&set),
            })
        }
        OracleOp::Feasible { seeds, threshold } => {
            let dense = resolve(seeds)?;
            let value = oracle.spread(&dense);
            serde_json::json!({
                "op": "feasible",
                "seeds": seeds,
                "threshold": threshold,
                "spread": value,
                "feasible": value >= *threshold,
            })
        }
    };
    println!("{out}");
    Ok(0)
}

struct CellStats {
    cost: Vec<f64>,
    influence_norm: Vec<f64>,
    rr_sets: Vec<f64>,
    wall_s: Vec<f64>,
    timeouts: usize,
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (mean, var.sqrt())
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<u8> {
    let g = args.graph.load()?;
    println!(
        "record,algorithm,eta,repeat,seed,status,cost,cost_sd,influence_norm,\
         influence_norm_sd,rr_sets,rr_sets_sd,wall_s,wall_s_sd"
    );
    let limit = Duration::from_secs_f64(args.time_limit_min * 60.0);
    for &algo in &args.algos {
        for &eta in &args.eta_list {
            let mut stats = CellStats {
                cost: Vec::new(),
                influence_norm: Vec::new(),
                rr_sets: Vec::new(),
                wall_s: Vec::new(),
                timeouts: 0,
            };
            let norm = (1.0 - args.params.alpha) * eta;
            for rep in 0..args.repeats {
                let mut params = args.params.solver_params(eta);
                params.seed = args.params.seed + rep as u64;
                let deadline = Instant::now() + limit;
                let t0 = Instant::now();
                match solve_once(&args.graph, algo, &params, &g, false, Some(deadline)) {
                    Ok((record, sol)) => {
                        let wall = t0.elapsed().as_secs_f64();
                        let influence_norm = record.evaluation.spread_mean / norm;
                        println!(
                            "run,{},{},{},{},{},{},,{},,{},,{},",
                            algo.name(),
                            sig6(eta),
                            rep,
                            params.seed,
                            if sol.infeasible { "infeasible" } else { "ok" },
                            sig6(record.solution.cost),
                            sig6(influence_norm),
                            record.solution.rr_sets_generated,
                            sig6(wall),
                        );
                        stats.cost.push(record.solution.cost);
                        stats.influence_norm.push(influence_norm);
                        stats.rr_sets.push(record.solution.rr_sets_generated as f64);
                        stats.wall_s.push(wall);
                    }
                    Err(e) if is_timeout(&e) => {
                        stats.timeouts += 1;
                        println!(
                            "run,{},{},{},{},timeout,,,,,,,,",
                            algo.name(),
                            sig6(eta),
                            rep,
                            params.seed,
                        );
                    }
                    Err(e) => return Err(e),
                }
            }
            let (cm, cs) = mean_sd(&stats.cost);
            let (im, isd) = mean_sd(&stats.influence_norm);
            let (rm, rs) = mean_sd(&stats.rr_sets);
            let (wm, ws) = mean_sd(&stats.wall_s);
            let status = if stats.timeouts == 0 {
                "ok".to_string()
            } else {
                format!("{}timeouts", stats.timeouts)
            };
            println!(
                "aggregate,{},{},,,{},{},{},{},{},{},{},{},{}",
                algo.name(),
                sig6(eta),
                status,
                sig6(cm),
                sig6(cs),
                sig6(im),
                sig6(isd),
                sig6(rm),
                sig6(rs),
                sig6(wm),
                sig6(ws),
            );
        }
    }
    Ok(0)
}

fn is_timeout(e: &anyhow::Error) -> bool {
    matches!(e.downcast_ref::<mcss::Error>(), Some(mcss::Error::Timeout))
}

fn cmd_cache(args: CacheArgs) -> anyhow::Result<u8> {
    let g = args.graph.load()?;
    let file = std::fs::File::create(&args.output)?;
    graph::write_cache(&g, std::io::BufWriter::new(file))?;
    eprintln!(
        "cached {} nodes / {} edges to {}",
        g.node_count(),
        g.edge_count(),
        args.output.display()
    );
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<u8> {
    if args.nodes < 2 {
        bail!("--nodes must be at least 2");
    }
    let g = graph::synthetic_preferential(args.nodes, args.out_degree, args.seed);
    let mut out = String::new();
    for (u, v, _) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    std::fs::write(&args.output, out)?;
    eprintln!(
        "wrote {} nodes / {} edges to {}",
        g.node_count(),
        g.edge_count(),
        args.output.display()
    );
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Oracle(args) => cmd_oracle(args),
        Cmd::Bench(args) => cmd_bench(args),
        Cmd::Cache(args) => cmd_cache(args),
        Cmd::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
