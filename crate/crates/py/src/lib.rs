//! Python bindings, importable as `immunet`.

use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyKeyError, PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use immunet::episim::{self, InitialInfected, SisConfig};
use immunet::spectral::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use immunet::walkscore;
use immunet::{Error, Method, PowerIteration, SelectOptions, VertexSet};

create_exception!(immunet, CapabilityError, PyRuntimeError);
create_exception!(immunet, NonConvergenceError, PyRuntimeError);

fn to_py(err: Error) -> PyErr {
    let msg = err.to_string();
    match err {
        Error::Argument(_) | Error::Parse { .. } | Error::DeadVertex(_) => {
            PyValueError::new_err(msg)
        }
        Error::VertexOutOfRange { .. } => PyIndexError::new_err(msg),
        Error::UnknownLabel(_) => PyKeyError::new_err(msg),
        Error::Io(_) => PyOSError::new_err(msg),
        Error::Capability(_) => CapabilityError::new_err(msg),
        Error::NonConvergence { .. } => NonConvergenceError::new_err(msg),
    }
}

fn power(tol: f64, max_iter: usize) -> PowerIteration {
    PowerIteration { tol, max_iter }
}

fn vset(vs: Vec<usize>) -> VertexSet {
    vs.into_iter().collect()
}

/// Immutable simple undirected graph.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: immunet::Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph on `n` vertices labelled "0".."n-1".
    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        if let Some(&(u, v)) = edges.iter().find(|(u, v)| *u >= n || *v >= n) {
            return Err(PyIndexError::new_err(format!(
                "edge ({u}, {v}) out of range for n = {n}"
            )));
        }
        Ok(PyGraph {
            inner: immunet::Graph::from_edges(n, &edges),
        })
    }

    /// Parses edge-list text (two labels per line, '#'/'%' comments).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| PyGraph { inner }).map_err(to_py)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        immunet::Graph::load(path)
            .map(|inner| PyGraph { inner })
            .map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.inner.degree(v).map_err(to_py)
    }

    fn codegree(&self, u: usize, v: usize) -> PyResult<usize> {
        self.inner.codegree(u, v).map_err(to_py)
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.inner.check_vertex(v).map_err(to_py)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.index_of(label)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn remove_vertices(&self, vertices: Vec<usize>) -> PyResult<Self> {
        self.inner
            .remove_vertices(&vset(vertices))
            .map(|inner| PyGraph { inner })
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Incremental degree / codegree-sum / score′ tables.
#[pyclass(name = "ScoreState")]
struct PyScoreState {
    inner: walkscore::ScoreState,
}

#[pymethods]
impl PyScoreState {
    #[getter]
    fn deg(&self) -> Vec<u64> {
        self.inner.deg().to_vec()
    }

    #[getter]
    fn codeg_sum(&self) -> Vec<u64> {
        self.inner.codeg_sum().to_vec()
    }

    #[getter]
    fn score(&self) -> Vec<u64> {
        self.inner.score().to_vec()
    }

    #[getter]
    fn alive(&self) -> Vec<bool> {
        self.inner.alive().to_vec()
    }

    fn peek_max(&mut self) -> Option<(usize, u64)> {
        self.inner.peek_max()
    }

    fn update(&mut self, g: &PyGraph, v: usize) -> PyResult<()> {
        self.inner.update(&g.inner, v).map_err(to_py)
    }
}

/// Returns (lambda1, eigvec, iterations, residual).
#[pyfunction]
#[pyo3(signature = (g, tol = DEFAULT_TOL, max_iter = DEFAULT_MAX_ITER))]
fn lambda1(g: &PyGraph, tol: f64, max_iter: usize) -> PyResult<(f64, Vec<f64>, usize, f64)> {
    let r = immunet::lambda1(&g.inner, power(tol, max_iter)).map_err(to_py)?;
    Ok((r.lambda1, r.eigvec, r.iterations, r.residual))
}

/// Returns a dict with lambda_before, lambda_after, drop, drop_pct.
#[pyfunction]
#[pyo3(signature = (g, vertices, tol = DEFAULT_TOL))]
fn eigendrop<'py>(
    py: Python<'py>,
    g: &PyGraph,
    vertices: Vec<usize>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = immunet::eigendrop(&g.inner, &vset(vertices), PowerIteration::with_tol(tol))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("lambda_before", r.lambda_before)?;
    d.set_item("lambda_after", r.lambda_after)?;
    d.set_item("drop", r.drop)?;
    d.set_item("drop_pct", r.drop_pct)?;
    Ok(d)
}

#[pyfunction]
fn trace_power(g: &PyGraph, p: usize) -> PyResult<u128> {
    immunet::trace_power(&g.inner, p).map_err(to_py)
}

#[pyfunction]
fn cw4_vertex(g: &PyGraph, v: usize) -> PyResult<u64> {
    immunet::cw4_vertex(&g.inner, v).map_err(to_py)
}

#[pyfunction]
fn cw_brute(g: &PyGraph, v: usize, p: usize) -> PyResult<u64> {
    immunet::cw_brute(&g.inner, v, p).map_err(to_py)
}

#[pyfunction]
fn gp_set(g: &PyGraph, vertices: Vec<usize>, p: usize) -> PyResult<u128> {
    immunet::gp_set(&g.inner, &vset(vertices), p).map_err(to_py)
}

#[pyfunction]
fn compute_scores(g: &PyGraph) -> PyScoreState {
    PyScoreState {
        inner: immunet::compute_scores(&g.inner),
    }
}

/// Runs a selection method; returns a dict with method, picks, values, wall_ms.
#[pyfunction]
#[pyo3(signature = (g, method, k, p = 4, tol = DEFAULT_TOL))]
fn select<'py>(
    py: Python<'py>,
    g: &PyGraph,
    method: &str,
    k: usize,
    p: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let method: Method = method.parse().map_err(to_py)?;
    let opts = SelectOptions {
        p,
        power: PowerIteration::with_tol(tol),
    };
    let sel = immunet::select(&g.inner, method, k, &opts).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("method", sel.method.name())?;
    d.set_item("picks", sel.picks.clone())?;
    d.set_item(
        "values",
        sel.per_step.iter().map(|s| s.value).collect::<Vec<_>>(),
    )?;
    d.set_item("wall_ms", sel.wall_time.as_secs_f64() * 1e3)?;
    Ok(d)
}

#[pyfunction]
fn greedy3(g: &PyGraph, k: usize) -> Vec<usize> {
    immunet::greedy3(&g.inner, k).picks
}

/// `1/λ₁`, or `inf` for a graph without edges.
#[pyfunction]
#[pyo3(signature = (g, tol = DEFAULT_TOL))]
fn epidemic_threshold(g: &PyGraph, tol: f64) -> PyResult<f64> {
    immunet::epidemic_threshold(&g.inner, PowerIteration::with_tol(tol)).map_err(to_py)
}

fn sis_config(
    beta: f64,
    delta: f64,
    steps: usize,
    trials: usize,
    seed: u64,
    initial_fraction: f64,
) -> SisConfig {
    SisConfig {
        beta,
        delta,
        steps,
        trials,
        seed,
        initial_infected: InitialInfected::Fraction(initial_fraction),
    }
}

/// Returns a dict with infected_ts, min_ts, max_ts, final_counts, final_mean,
/// beta_over_delta and threshold.
#[pyfunction]
#[pyo3(signature = (g, beta, delta, steps = 100, trials = 20, seed = 0, immunized = Vec::new(), initial_fraction = 0.1))]
#[allow(clippy::too_many_arguments)]
fn sis_simulate<'py>(
    py: Python<'py>,
    g: &PyGraph,
    beta: f64,
    delta: f64,
    steps: usize,
    trials: usize,
    seed: u64,
    immunized: Vec<usize>,
    initial_fraction: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = sis_config(beta, delta, steps, trials, seed, initial_fraction);
    let r = py
        .detach(|| episim::sis_simulate(&g.inner, &cfg, &vset(immunized)))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("infected_ts", r.infected_ts)?;
    d.set_item("min_ts", r.min_ts)?;
    d.set_item("max_ts", r.max_ts)?;
    d.set_item("final_counts", r.final_counts)?;
    d.set_item("final_mean", r.final_mean)?;
    d.set_item("beta_over_delta", r.threshold.beta_over_delta)?;
    d.set_item("threshold", r.threshold.threshold)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (g, vertices, beta, delta, steps = 100, trials = 20, seed = 0, initial_fraction = 0.1))]
#[allow(clippy::too_many_arguments)]
fn save_ratio(
    py: Python<'_>,
    g: &PyGraph,
    vertices: Vec<usize>,
    beta: f64,
    delta: f64,
    steps: usize,
    trials: usize,
    seed: u64,
    initial_fraction: f64,
) -> PyResult<f64> {
    let cfg = sis_config(beta, delta, steps, trials, seed, initial_fraction);
    py.detach(|| immunet::save_ratio(&g.inner, &cfg, &vset(vertices)))
        .map_err(to_py)
}

#[pymodule]
#[pyo3(name = "immunet")]
fn immunet_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyScoreState>()?;
    m.add_function(wrap_pyfunction!(lambda1, m)?)?;
    m.add_function(wrap_pyfunction!(eigendrop, m)?)?;
    m.add_function(wrap_pyfunction!(trace_power, m)?)?;
    m.add_function(wrap_pyfunction!(cw4_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(cw_brute, m)?)?;
    m.add_function(wrap_pyfunction!(gp_set, m)?)?;
    m.add_function(wrap_pyfunction!(compute_scores, m)?)?;
    m.add_function(wrap_pyfunction!(select, m)?)?;
    m.add_function(wrap_pyfunction!(greedy3, m)?)?;
    m.add_function(wrap_pyfunction!(epidemic_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(sis_simulate, m)?)?;
    m.add_function(wrap_pyfunction!(save_ratio, m)?)?;
    m.add("CapabilityError", m.py().get_type::<CapabilityError>())?;
    m.add(
        "NonConvergenceError",
        m.py().get_type::<NonConvergenceError>(),
    )?;
    Ok(())
}
