//! Python bindings: `import edimlab`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use edimlab::edgelist::{format_edge_list, parse_edge_list};
use edimlab::experiment::wall_ms;
use edimlab::resolving::is_resolving;
use edimlab::solvers::{solve_resolving, SolveWarning};
use edimlab::{all_pairs_distances, montecarlo, theory, LandmarkSet, Method, Mode, SolveError};

create_exception!(edimlab, CapExceededError, PyException, "The exhaustive search hit its size cap.");
create_exception!(edimlab, InfeasibleError, PyException, "Some object pair cannot be distinguished.");

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solve_error(e: SolveError) -> PyErr {
    match e {
        SolveError::CapExceeded { .. } => CapExceededError::new_err(e.to_string()),
        SolveError::Infeasible { .. } => InfeasibleError::new_err(e.to_string()),
        other => value_error(other),
    }
}

/// Converts through the `json` module.
fn to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

fn parse<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(value_error)
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "edimlab", frozen)]
pub struct PyGraph {
    inner: edimlab::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = edimlab::Graph::from_edges(n, edges).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    /// G(n, p) sampled from `seed`.
    #[staticmethod]
    #[pyo3(signature = (n, p, seed = 0))]
    fn gnp(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        let inner = edimlab::generate_er(n, p, seed).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph { inner: edimlab::Graph::path(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph { inner: edimlab::Graph::cycle(n) }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: edimlab::Graph::complete(n) }
    }

    #[staticmethod]
    fn star(leaves: usize) -> Self {
        PyGraph { inner: edimlab::Graph::star(leaves) }
    }

    /// Parses the `n m` header plus one `u v` line per edge.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let inner = parse_edge_list(text).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    fn to_edge_list(&self) -> String {
        format_edge_list(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(value_error(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    /// Hop distances as a list of rows; `None` marks unreachable pairs.
    fn distances(&self) -> Vec<Vec<Option<u32>>> {
        let dm = all_pairs_distances(&self.inner);
        (0..self.inner.n())
            .map(|u| dm.row(u).iter().map(|&d| (d != edimlab::UNREACHABLE).then_some(d)).collect())
            .collect()
    }

    /// Diameter, or `None` when the graph is disconnected.
    fn diameter(&self) -> Option<u32> {
        let d = edimlab::diameter(&self.inner);
        (d != edimlab::UNREACHABLE).then_some(d)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Outcome of a solve.
#[pyclass(name = "SolveResult", module = "edimlab", frozen, get_all)]
pub struct PySolveResult {
    size: usize,
    witness: Vec<usize>,
    optimal: bool,
    nodes_explored: u64,
    wall_time_ms: f64,
    warnings: Vec<String>,
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        let optimal = if self.optimal { "True" } else { "False" };
        format!("SolveResult(size={}, witness={:?}, optimal={optimal})", self.size, self.witness)
    }
}

/// Smallest (or greedy) landmark set resolving vertices (`mode="vertex"`) or
/// edges (`mode="edge"`).
#[pyfunction]
#[pyo3(signature = (graph, mode = "edge", method = "bnb", max_size = None))]
fn solve(py: Python<'_>, graph: &PyGraph, mode: &str, method: &str, max_size: Option<usize>) -> PyResult<PySolveResult> {
    let mode: Mode = parse(mode)?;
    let method: Method = parse(method)?;
    let g = &graph.inner;
    let r = py
        .detach(|| solve_resolving(g, &all_pairs_distances(g), mode, method, max_size))
        .map_err(solve_error)?;
    Ok(PySolveResult {
        size: r.size,
        witness: r.witness.members().to_vec(),
        optimal: r.optimal,
        nodes_explored: r.nodes_explored,
        wall_time_ms: wall_ms(r.wall_time),
        warnings: r
            .warnings
            .iter()
            .map(|w| match w {
                SolveWarning::Disconnected => "disconnected".to_string(),
            })
            .collect(),
    })
}

#[pyfunction]
#[pyo3(signature = (graph, method = "bnb"))]
fn metric_dimension(py: Python<'_>, graph: &PyGraph, method: &str) -> PyResult<usize> {
    Ok(solve(py, graph, "vertex", method, None)?.size)
}

#[pyfunction]
#[pyo3(signature = (graph, method = "bnb"))]
fn edge_metric_dimension(py: Python<'_>, graph: &PyGraph, method: &str) -> PyResult<usize> {
    Ok(solve(py, graph, "edge", method, None)?.size)
}

/// Whether `landmarks` separates every pair of vertices or edges.
#[pyfunction]
#[pyo3(signature = (graph, landmarks, mode = "edge"))]
fn resolves(graph: &PyGraph, landmarks: Vec<usize>, mode: &str) -> PyResult<bool> {
    let mode: Mode = parse(mode)?;
    let g = &graph.inner;
    let set = LandmarkSet::new(landmarks, g.n()).map_err(value_error)?;
    Ok(is_resolving(&all_pairs_distances(g), g, mode, &set))
}

/// Closed-form quantities for `(n, p)` as a dict.
#[pyfunction]
fn theory_params(py: Python<'_>, n: u64, p: f64) -> PyResult<Bound<'_, PyAny>> {
    let params = theory::TheoryParams::new(n, p).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (params.to_json(),))
}

#[pyfunction]
fn q_of(p: f64) -> f64 {
    theory::q_of(p)
}

#[pyfunction]
#[pyo3(name = "bigQ_of")]
fn big_q_of(p: f64) -> f64 {
    theory::big_q_of(p)
}

#[pyfunction]
fn s_of(p: f64) -> f64 {
    theory::s_of(p)
}

#[pyfunction]
fn edim_asymptotic(n: u64, p: f64) -> PyResult<f64> {
    theory::edim_asymptotic(n, p).map_err(value_error)
}

#[pyfunction]
fn dim_asymptotic(n: u64, p: f64) -> PyResult<f64> {
    theory::dim_asymptotic(n, p).map_err(value_error)
}

/// Monte Carlo estimate as a dict. `target` is one of `q`, `profile`,
/// `s_p`, `diameter2`, `type_pairs`, `random_set` (which needs `w`).
#[pyfunction]
#[pyo3(signature = (target, n, p, trials, seed = 0, w = None))]
fn monte_carlo<'py>(
    py: Python<'py>,
    target: &str,
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    w: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let value: serde_json::Value = py
        .detach(|| -> Result<serde_json::Value, String> {
            let err = |e: montecarlo::McError| e.to_string();
            let json = |v: Result<serde_json::Value, serde_json::Error>| v.map_err(|e| e.to_string());
            match target {
                "q" => json(serde_json::to_value(montecarlo::estimate_nondistinguish(n, p, trials, seed).map_err(err)?)),
                "profile" => Ok(montecarlo::estimate_profile_table(n, p, trials, seed).map_err(err)?.to_json()),
                "s_p" => json(serde_json::to_value(montecarlo::estimate_joint_fail(n, p, trials, seed).map_err(err)?)),
                "diameter2" => json(serde_json::to_value(montecarlo::estimate_diameter2(n, p, trials, seed).map_err(err)?)),
                "type_pairs" => {
                    json(serde_json::to_value(montecarlo::estimate_type_pair_counts(n, p, trials, seed).map_err(err)?))
                }
                "random_set" => {
                    let w = w.ok_or("random_set needs w")?;
                    json(serde_json::to_value(montecarlo::random_set_trial(n, p, w, trials, seed).map_err(err)?))
                }
                other => Err(format!("unknown target {other:?}")),
            }
        })
        .map_err(value_error)?;
    to_py(py, &value)
}

#[pymodule]
#[pyo3(name = "edimlab")]
pub fn edimlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyGraph>()?;
    m.add_class::<PySolveResult>()?;
    m.add("CapExceededError", py.get_type::<CapExceededError>())?;
    m.add("InfeasibleError", py.get_type::<InfeasibleError>())?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(metric_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(edge_metric_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(resolves, m)?)?;
    m.add_function(wrap_pyfunction!(theory_params, m)?)?;
    m.add_function(wrap_pyfunction!(q_of, m)?)?;
    m.add_function(wrap_pyfunction!(big_q_of, m)?)?;
    m.add_function(wrap_pyfunction!(s_of, m)?)?;
    m.add_function(wrap_pyfunction!(edim_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(dim_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo, m)?)?;
    Ok(())
}
