//! Python bindings: the graph/cost/model types plus the solvers, estimator
//! and exact oracle, driven in-process from Python.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use mcss::cost::{assign_costs, CostMode, CostModel};
use mcss::graph::{self, Orientation, Weighting};
use mcss::mcss::{self as solvers, MuMode, RunConfig, SeedSolution};
use mcss::oracle::{ExactLimits, ExactOracle};
use mcss::propagation::{simulate_spread, ModelKind, RrCollection, TriggeringModel};

fn to_py_err(e: mcss::Error) -> PyErr {
    match e {
        mcss::Error::InvalidParameter { .. }
        | mcss::Error::NonUniformCosts { .. }
        | mcss::Error::LimitExceeded { .. } => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn parse_weighting(s: &str) -> PyResult<Weighting> {
    match s {
        "wc" | "weighted_cascade" => Ok(Weighting::WeightedCascade),
        "explicit" => Ok(Weighting::Explicit),
        _ => Err(PyValueError::new_err(format!("unknown weighting `{s}`"))),
    }
}

fn parse_orientation(s: &str) -> PyResult<Orientation> {
    match s {
        "directed" => Ok(Orientation::Directed),
        "undirected" => Ok(Orientation::UndirectedAsBidirected),
        _ => Err(PyValueError::new_err(format!("unknown orientation `{s}`"))),
    }
}

fn parse_model(s: &str) -> PyResult<ModelKind> {
    match s {
        "ic" => Ok(ModelKind::Ic),
        "lt" => Ok(ModelKind::Lt),
        _ => Err(PyValueError::new_err(format!("unknown model `{s}`"))),
    }
}

/// An immutable directed influence graph.
#[pyclass(name = "Graph")]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    /// Parse edge-list text (`u v` under weighting="wc", `u v p` under
    /// weighting="explicit").
    #[staticmethod]
    #[pyo3(signature = (text, weighting="wc", orientation="directed"))]
    fn from_text(text: &str, weighting: &str, orientation: &str) -> PyResult<Self> {
        let g = graph::load_edge_list(
            text.as_bytes(),
            parse_weighting(weighting)?,
            parse_orientation(orientation)?,
        )
        .map_err(to_py_err)?;
        Ok(PyGraph { inner: g })
    }

    /// Load an edge-list file.
    #[staticmethod]
    #[pyo3(signature = (path, weighting="wc", orientation="directed"))]
    fn load(path: &str, weighting: &str, orientation: &str) -> PyResult<Self> {
        let g = graph::load_edge_list_path(
            std::path::Path::new(path),
            parse_weighting(weighting)?,
            parse_orientation(orientation)?,
        )
        .map_err(to_py_err)?;
        Ok(PyGraph { inner: g })
    }

    /// Deterministic synthetic scale-free graph with weighted-cascade weights.
    #[staticmethod]
    #[pyo3(signature = (nodes, out_degree=15, seed=0))]
    fn synthetic(nodes: u32, out_degree: u32, seed: u64) -> PyResult<Self> {
        if nodes < 2 {
            return Err(PyValueError::new_err("nodes must be at least 2"));
        }
        Ok(PyGraph {
            inner: graph::synthetic_preferential(nodes, out_degree, seed),
        })
    }

    #[getter]
    fn node_count(&self) -> u32 {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn in_degree(&self, v: u32) -> usize {
        self.inner.in_degree(v)
    }

    fn original_id(&self, v: u32) -> u64 {
        self.inner.original_id(v)
    }

    fn to_edge_list_text(&self) -> String {
        self.inner.to_edge_list_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

/// Per-node seeding costs (uniform, or Uniform(0,1] draws keyed by seed).
#[pyclass(name = "CostModel")]
struct PyCostModel {
    inner: CostModel,
}

#[pymethods]
impl PyCostModel {
    #[staticmethod]
    fn uniform(g: &PyGraph) -> PyResult<Self> {
        Ok(PyCostModel {
            inner: assign_costs(&g.inner, CostMode::Uniform).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn random(g: &PyGraph, seed: u64) -> PyResult<Self> {
        Ok(PyCostModel {
            inner: assign_costs(&g.inner, CostMode::RandomUniform { seed })
                .map_err(to_py_err)?,
        })
    }

    fn node_cost(&self, v: u32) -> f64 {
        self.inner.node_cost(v)
    }

    fn set_cost(&self, nodes: Vec<u32>) -> f64 {
        self.inner.set_cost(&nodes)
    }
}

/// A solver result.
#[pyclass(name = "SeedSolution")]
struct PySeedSolution {
    inner: SeedSolution,
}

#[pymethods]
impl PySeedSolution {
    #[getter]
    fn seeds(&self) -> Vec<u32> {
        self.inner.seeds.clone()
    }

    #[getter]
    fn cost(&self) -> f64 {
        self.inner.cost
    }

    #[getter]
    fn coverage(&self) -> f64 {
        self.inner.coverage
    }

    #[getter]
    fn rr_sets_generated(&self) -> usize {
        self.inner.rr_sets_generated
    }

    #[getter]
    fn budget(&self) -> u64 {
        self.inner.budget
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    #[getter]
    fn infeasible(&self) -> bool {
        self.inner.infeasible
    }

    #[getter]
    fn wall_seconds(&self) -> f64 {
        self.inner.wall.as_secs_f64()
    }

    fn __repr__(&self) -> String {
        format!(
            "SeedSolution(seeds={:?}, cost={}, coverage={}, rr_sets={}, infeasible={})",
            self.inner.seeds,
            self.inner.cost,
            self.inner.coverage,
            self.inner.rr_sets_generated,
            self.inner.infeasible
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    eta: f64,
    delta: f64,
    alpha: f64,
    sigma: Option<f64>,
    gamma: Option<f64>,
    tau: f64,
    mu_exponent: Option<u32>,
    seed: u64,
    threads: usize,
) -> RunConfig {
    RunConfig {
        eta,
        delta,
        alpha,
        sigma: sigma.unwrap_or(alpha / 3.0),
        gamma: gamma.unwrap_or(alpha / 3.0),
        tau,
        mu_mode: match mu_exponent {
            Some(k) => MuMode::Exponent(k),
            None => MuMode::Theory,
        },
        seed,
        threads: threads.max(1),
        deadline: None,
    }
}

macro_rules! solver_fn {
    ($name:ident, $solver:path) => {
        /// Run the solver; mu_exponent=None selects the bound-faithful
        /// (theory) pool sizing.
        #[pyfunction]
        #[pyo3(signature = (g, costs, eta, *, model="ic", delta=0.01, alpha=0.2,
            sigma=None, gamma=None, tau=0.02, mu_exponent=8, seed=0, threads=1))]
        #[allow(clippy::too_many_arguments)]
        fn $name(
            py: Python<'_>,
            g: &PyGraph,
            costs: &PyCostModel,
            eta: f64,
            model: &str,
            delta: f64,
            alpha: f64,
            sigma: Option<f64>,
            gamma: Option<f64>,
            tau: f64,
            mu_exponent: Option<u32>,
            seed: u64,
            threads: usize,
        ) -> PyResult<PySeedSolution> {
            let kind = parse_model(model)?;
            let tm = TriggeringModel::new(kind, &g.inner).map_err(to_py_err)?;
            let cfg = build_config(
                eta, delta, alpha, sigma, gamma, tau, mu_exponent, seed, threads,
            );
            let sol = py
                .allow_threads(|| $solver(&g.inner, tm, &costs.inner, &cfg))
                .map_err(to_py_err)?;
            Ok(PySeedSolution { inner: sol })
        }
    };
}

solver_fn!(bcgc, solvers::bcgc);
solver_fn!(tegc, solvers::tegc);
solver_fn!(aauc, solvers::aauc);
solver_fn!(ateuc, solvers::ateuc);

/// Monte-Carlo greedy baseline stopping at coverage target `lam`.
#[pyfunction]
#[pyo3(signature = (g, costs, lam, *, model="ic", sims_per_estimate=10_000, seed=0))]
fn celf(
    py: Python<'_>,
    g: &PyGraph,
    costs: &PyCostModel,
    lam: f64,
    model: &str,
    sims_per_estimate: usize,
    seed: u64,
) -> PyResult<PySeedSolution> {
    let kind = parse_model(model)?;
    let tm = TriggeringModel::new(kind, &g.inner).map_err(to_py_err)?;
    let sol = py
        .allow_threads(|| {
            solvers::celf_baseline(&g.inner, tm, &costs.inner, lam, sims_per_estimate, seed)
        })
        .map_err(to_py_err)?;
    Ok(PySeedSolution { inner: sol })
}

/// Forward Monte-Carlo influence estimate: (mean, stderr).
#[pyfunction]
#[pyo3(signature = (g, seeds, *, model="ic", num_sims=10_000, seed=0))]
fn simulate(
    py: Python<'_>,
    g: &PyGraph,
    seeds: Vec<u32>,
    model: &str,
    num_sims: usize,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let kind = parse_model(model)?;
    let tm = TriggeringModel::new(kind, &g.inner).map_err(to_py_err)?;
    Ok(py.allow_threads(|| simulate_spread(&g.inner, tm, &seeds, num_sims, seed)))
}

/// Sampled coverage of `seeds` over a fresh pool of `pool_size` RR-sets.
#[pyfunction]
#[pyo3(signature = (g, seeds, pool_size, *, model="ic", seed=0))]
fn rr_coverage(
    py: Python<'_>,
    g: &PyGraph,
    seeds: Vec<u32>,
    pool_size: usize,
    model: &str,
    seed: u64,
) -> PyResult<f64> {
    let kind = parse_model(model)?;
    let tm = TriggeringModel::new(kind, &g.inner).map_err(to_py_err)?;
    py.allow_threads(|| {
        let mut coll = RrCollection::new(g.inner.node_count(), seed);
        coll.extend_to(&g.inner, tm, pool_size, None)?;
        coll.coverage_estimate(&seeds)
    })
    .map_err(to_py_err)
}

/// Exact influence spread by exhaustive enumeration (tiny instances only).
#[pyfunction]
#[pyo3(signature = (g, seeds, *, model="ic"))]
fn exact_spread(g: &PyGraph, seeds: Vec<u32>, model: &str) -> PyResult<f64> {
    let kind = parse_model(model)?;
    let tm = TriggeringModel::new(kind, &g.inner).map_err(to_py_err)?;
    mcss::oracle::exact_spread(&g.inner, tm, &seeds, &ExactLimits::default()).map_err(to_py_err)
}

/// Exact minimum-cost seed set reaching `eta`: (seeds, cost).
#[pyfunction]
#[pyo3(signature = (g, costs, eta, *, model="ic"))]
fn exact_optimum(
    g: &PyGraph,
    costs: &PyCostModel,
    eta: f64,
    model: &str,
) -> PyResult<(Vec<u32>, f64)> {
    let kind = parse_model(model)?;
    let tm = TriggeringModel::new(kind, &g.inner).map_err(to_py_err)?;
    let mut oracle = ExactOracle::build(&g.inner, tm, &ExactLimits::default()).map_err(to_py_err)?;
    oracle.optimum(&costs.inner, eta).map_err(to_py_err)
}

#[pymodule]
fn mcss_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCostModel>()?;
    m.add_class::<PySeedSolution>()?;
    m.add_function(wrap_pyfunction!(bcgc, m)?)?;
    m.add_function(wrap_pyfunction!(tegc, m)?)?;
    m.add_function(wrap_pyfunction!(aauc, m)?)?;
    m.add_function(wrap_pyfunction!(ateuc, m)?)?;
    m.add_function(wrap_pyfunction!(celf, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(rr_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(exact_spread, m)?)?;
    m.add_function(wrap_pyfunction!(exact_optimum, m)?)?;
    Ok(())
}
