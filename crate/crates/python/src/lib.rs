//! Python bindings: `import graphburn`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use graph_burning::exact::{self, DEFAULT_NODE_BUDGET};
use graph_burning::generators::{self, ClusterSpec, ThetaSpec};
use graph_burning::heuristics::HeuristicId;
use graph_burning::{io, Graph};

fn err(e: graph_burning::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen, from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::from_edges(n, edges).map_err(err)?,
        })
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph { inner: generators::path(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        generators::gen_elementary(generators::ElementaryKind::Cycle, n)
            .map(|inner| PyGraph { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph {
            inner: generators::complete(n),
        }
    }

    /// Parse DIMACS (`p edge` / `e u v`) text.
    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        io::parse_dimacs(text).map(|(inner, _)| PyGraph { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_mtx(text: &str) -> PyResult<Self> {
        io::parse_mtx(text).map(|(inner, _)| PyGraph { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        io::parse_edge_list(text).map(|inner| PyGraph { inner }).map_err(err)
    }

    fn to_edge_list(&self) -> String {
        io::write_edge_list(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    /// Distances from `source`; `None` for unreachable vertices.
    fn distances(&self, source: usize) -> PyResult<Vec<Option<u32>>> {
        let row = graph_burning::graph::bfs_distances(&self.inner, source).map_err(err)?;
        Ok((0..self.inner.vertex_count()).map(|v| row.get(v)).collect())
    }

    /// `(radius, diameter, center)`.
    fn metrics(&self) -> PyResult<(u32, u32, Vec<usize>)> {
        let m = graph_burning::graph::metrics(&self.inner).map_err(err)?;
        Ok((m.radius, m.diameter, m.center))
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// Round at which each vertex burns, and the completion round.
#[pyfunction]
fn burn_times(g: &PyGraph, activators: Vec<usize>) -> PyResult<(Vec<u32>, u32)> {
    let bt = graph_burning::burn_times(&g.inner, &activators).map_err(err)?;
    Ok((bt.times, bt.completion))
}

/// True when `activators` burn the graph within `k` rounds and respect spacing.
#[pyfunction]
fn validate_sequence(g: &PyGraph, activators: Vec<usize>, k: u32) -> PyResult<bool> {
    Ok(graph_burning::validate_sequence(&g.inner, &activators, k).map_err(err)?.valid)
}

/// Heuristic names accepted by `run_heuristic`.
#[pyfunction]
fn heuristics() -> Vec<&'static str> {
    HeuristicId::ALL.iter().map(|h| h.as_str()).collect()
}

/// Returns the activator list.
#[pyfunction]
#[pyo3(signature = (g, heuristic, seed = 0))]
fn run_heuristic(g: &PyGraph, heuristic: &str, seed: u64) -> PyResult<Vec<usize>> {
    let id: HeuristicId = heuristic.parse().map_err(err)?;
    let run = graph_burning::run_heuristic(&g.inner, id, seed).map_err(err)?;
    Ok(run.sequence.activators)
}

/// `(burning_number, witness)`.
#[pyfunction]
#[pyo3(signature = (g, budget = DEFAULT_NODE_BUDGET))]
fn exact_bn(py: Python<'_>, g: &PyGraph, budget: u64) -> PyResult<(u32, Vec<usize>)> {
    let graph = g.inner.clone();
    let out = py.detach(move || graph_burning::exact_bn(&graph, budget)).map_err(err)?;
    Ok((out.burning_number, out.witness.activators))
}

/// `(graph, name)` for a cycle of `cycle_size` plus a path of `path_internal` new vertices.
#[pyfunction]
#[pyo3(signature = (cycle_size, path_internal, seed = 0, sample = 0))]
fn gen_theta(cycle_size: usize, path_internal: usize, seed: u64, sample: u32) -> PyResult<(PyGraph, String)> {
    let inst = generators::gen_theta(&ThetaSpec {
        cycle_size,
        path_internal,
        seed,
        sample,
    })
    .map_err(err)?;
    Ok((PyGraph { inner: inst.graph }, inst.name.to_string()))
}

/// `(graph, name, modulator)`.
#[pyfunction]
#[pyo3(signature = (clique_count, size_min, size_max, path_len, seed = 0, sample = 0))]
fn gen_cluster(
    clique_count: usize,
    size_min: usize,
    size_max: usize,
    path_len: usize,
    seed: u64,
    sample: u32,
) -> PyResult<(PyGraph, String, Vec<usize>)> {
    let inst = generators::gen_cluster(&ClusterSpec {
        clique_count,
        size_min,
        size_max,
        path_len,
        seed,
        sample,
    })
    .map_err(err)?;
    Ok((PyGraph { inner: inst.graph }, inst.name.to_string(), inst.modulator))
}

/// `(expected, allowed)` for a θ-graph on `n` vertices.
#[pyfunction]
fn theta_bound(n: u64) -> PyResult<(u32, Vec<u32>)> {
    let b = exact::theta_bound(n).map_err(err)?;
    Ok((b.expected, b.allowed.to_vec()))
}

#[pyfunction]
fn cluster_bound(d: u64) -> u32 {
    exact::cluster_bound(d)
}

#[pyfunction]
fn lower_bound(g: &PyGraph) -> u32 {
    exact::trivial_lower_bound(&g.inner)
}

#[pymodule]
fn graphburn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(burn_times, m)?)?;
    m.add_function(wrap_pyfunction!(validate_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(heuristics, m)?)?;
    m.add_function(wrap_pyfunction!(run_heuristic, m)?)?;
    m.add_function(wrap_pyfunction!(exact_bn, m)?)?;
    m.add_function(wrap_pyfunction!(gen_theta, m)?)?;
    m.add_function(wrap_pyfunction!(gen_cluster, m)?)?;
    m.add_function(wrap_pyfunction!(theta_bound, m)?)?;
    m.add_function(wrap_pyfunction!(cluster_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    Ok(())
}
