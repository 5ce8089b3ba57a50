//! Python bindings: `import cosmeasure`.
//!
//! Sets are passed as lists of vectors (one inner list per vector) or as
//! `TestCase` objects returned by the generators.

use std::path::PathBuf;
use std::time::Duration;

use cosmeasure::generators::{self as gen, Family, GeneratorSpec};
use cosmeasure::solvers::{self, Method, SolverConfig};
use cosmeasure::testset_io::{self, StoreError};
use cosmeasure::{Tolerances, VectorSet};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: cosmeasure::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn store_err(e: StoreError) -> PyErr {
    match e {
        StoreError::Io { .. } => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_lists(v: &nalgebra::DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

/// A generated or loaded set with its known cosine measure, if any.
#[pyclass(name = "TestCase", module = "cosmeasure")]
struct PyTestCase {
    inner: gen::TestCase,
}

#[pymethods]
impl PyTestCase {
    #[new]
    fn new(vectors: Vec<Vec<f64>>) -> PyResult<Self> {
        let set = cosmeasure::normalize_set(&vectors, &Tolerances::default()).map_err(value_err)?;
        Ok(Self {
            inner: gen::TestCase::new(set),
        })
    }

    /// Unit vectors, one list per vector.
    #[getter]
    fn vectors(&self) -> Vec<Vec<f64>> {
        self.inner.set.to_rows()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.set.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.set.len()
    }

    #[getter]
    fn known_cm(&self) -> Option<f64> {
        self.inner.known_cm
    }

    #[getter]
    fn cosine_vector(&self) -> Option<Vec<f64>> {
        self.inner.cosine_vector.as_ref().map(to_lists)
    }

    #[getter]
    fn family(&self) -> Option<&'static str> {
        self.inner.spec.as_ref().map(|s| s.family.name())
    }

    fn __repr__(&self) -> String {
        format!(
            "TestCase(family={}, n={}, k={}, known_cm={:?})",
            self.family().unwrap_or("none"),
            self.inner.set.dim(),
            self.inner.set.len(),
            self.inner.known_cm
        )
    }
}

#[pyclass(name = "SolveResult", module = "cosmeasure", get_all)]
struct PySolveResult {
    value: f64,
    method: &'static str,
    status: &'static str,
    completed: bool,
    cosine_vectors: Vec<Vec<f64>>,
    active_sets: Vec<Vec<usize>>,
    truncated: bool,
    candidates: u64,
    lps_solved: u64,
    wall_time: f64,
    trace: Vec<f64>,
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        format!(
            "SolveResult(value={}, method={}, status={}, vectors={})",
            self.value,
            self.method,
            self.status,
            self.cosine_vectors.len()
        )
    }
}

fn extract_set(obj: &Bound<'_, PyAny>) -> PyResult<VectorSet> {
    if let Ok(case) = obj.cast::<PyTestCase>() {
        return Ok(case.borrow().inner.set.clone());
    }
    let rows: Vec<Vec<f64>> = obj.extract()?;
    cosmeasure::normalize_set(&rows, &Tolerances::default()).map_err(value_err)
}

fn parse_method(name: &str) -> PyResult<Method> {
    name.parse().map_err(value_err)
}

/// Cosine measure of `vectors` with the chosen method.
#[pyfunction]
#[pyo3(signature = (vectors, method = "vertex_enum", budget_secs = None, seed = 0, lp_iterations = 100))]
fn solve(
    py: Python<'_>,
    vectors: &Bound<'_, PyAny>,
    method: &str,
    budget_secs: Option<f64>,
    seed: u64,
    lp_iterations: usize,
) -> PyResult<PySolveResult> {
    let set = extract_set(vectors)?;
    let method = parse_method(method)?;
    let cfg = SolverConfig {
        time_budget: budget_secs.map(Duration::from_secs_f64),
        rng_seed: seed,
        lp_iterations,
        ..Default::default()
    };
    let rep = py
        .detach(|| solvers::solve(&set, method, &cfg))
        .map_err(value_err)?;
    let r = rep.result;
    Ok(PySolveResult {
        value: r.value,
        method: rep.method.name(),
        status: r.status.name(),
        completed: rep.completed,
        cosine_vectors: r.cosine_vectors.iter().map(to_lists).collect(),
        active_sets: r.active_sets,
        truncated: r.truncated,
        candidates: r.stats.candidates,
        lps_solved: r.stats.lps_solved,
        wall_time: r.stats.wall_time.as_secs_f64(),
        trace: r.stats.trace,
    })
}

#[pyfunction]
#[pyo3(signature = (vectors, method = "vertex_enum"))]
fn cosine_measure(py: Python<'_>, vectors: &Bound<'_, PyAny>, method: &str) -> PyResult<f64> {
    Ok(solve(py, vectors, method, None, 0, 100)?.value)
}

#[pyfunction]
fn is_positive_spanning(vectors: &Bound<'_, PyAny>) -> PyResult<bool> {
    let set = extract_set(vectors)?;
    Ok(cosmeasure::is_positive_spanning(
        &set,
        &Tolerances::default(),
    ))
}

#[pyfunction]
fn methods() -> Vec<&'static str> {
    Method::ALL.iter().map(|m| m.name()).collect()
}

#[pyfunction]
fn families() -> Vec<&'static str> {
    Family::ALL.iter().map(|f| f.name()).collect()
}

/// Build a set of the named family.
#[pyfunction]
#[pyo3(signature = (family, n, delta = None, size = None, seed = None, instance = None, augment_count = None))]
fn generate(
    family: &str,
    n: usize,
    delta: Option<f64>,
    size: Option<usize>,
    seed: Option<u64>,
    instance: Option<usize>,
    augment_count: Option<usize>,
) -> PyResult<PyTestCase> {
    let family: Family = family.parse().map_err(value_err)?;
    let spec = GeneratorSpec {
        delta,
        size,
        seed,
        instance,
        augment_count,
        ..GeneratorSpec::new(family, n)
    };
    Ok(PyTestCase {
        inner: gen::generate(&spec).map_err(value_err)?,
    })
}

/// Shift parameter giving cosine measure `target` for the minimal or
/// maximal δ-shift family.
#[pyfunction]
fn delta_for_target(family: &str, n: usize, target: f64) -> PyResult<f64> {
    match family.parse::<Family>().map_err(value_err)? {
        Family::MinDeltaShift => gen::delta_for_target_min(n, target).map_err(value_err),
        Family::MaxDeltaShift | Family::AugMaxDeltaShift => {
            gen::delta_for_target_max(n, target).map_err(value_err)
        }
        f => Err(PyValueError::new_err(format!(
            "{} has no shift parameter",
            f.name()
        ))),
    }
}

#[pyfunction]
fn rotate(case: PyRef<'_, PyTestCase>, seed: u64) -> PyTestCase {
    PyTestCase {
        inner: gen::rotate(&case.inner, seed),
    }
}

#[pyfunction]
fn permute(case: PyRef<'_, PyTestCase>, seed: u64) -> PyTestCase {
    PyTestCase {
        inner: gen::permute(&case.inner, seed),
    }
}

#[pyfunction]
fn augment(case: PyRef<'_, PyTestCase>, count: usize, seed: u64) -> PyResult<PyTestCase> {
    Ok(PyTestCase {
        inner: gen::augment(&case.inner, count, seed).map_err(value_err)?,
    })
}

#[pyfunction]
fn load_case(path: PathBuf) -> PyResult<PyTestCase> {
    Ok(PyTestCase {
        inner: testset_io::load_case(&path).map_err(store_err)?,
    })
}

/// Save under `root/<family>/<params>.json` and return the path.
#[pyfunction]
fn save_case(case: PyRef<'_, PyTestCase>, root: PathBuf) -> PyResult<PathBuf> {
    testset_io::save_case(&case.inner, &root).map_err(store_err)
}

#[pymodule]
#[pyo3(name = "cosmeasure")]
fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTestCase>()?;
    m.add_class::<PySolveResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(cosine_measure, m)?)?;
    m.add_function(wrap_pyfunction!(is_positive_spanning, m)?)?;
    m.add_function(wrap_pyfunction!(methods, m)?)?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(delta_for_target, m)?)?;
    m.add_function(wrap_pyfunction!(rotate, m)?)?;
    m.add_function(wrap_pyfunction!(permute, m)?)?;
    m.add_function(wrap_pyfunction!(augment, m)?)?;
    m.add_function(wrap_pyfunction!(load_case, m)?)?;
    m.add_function(wrap_pyfunction!(save_case, m)?)?;
    Ok(())
}
