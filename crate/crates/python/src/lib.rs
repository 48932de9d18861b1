//! Python bindings: the `sarbandit` extension module.
//!
//! Arm and problem indices are 0-based, as in the Rust API. Strategies are
//! named by the strings accepted in config files (`"sar"`, `"gap_e(c=2)"`, ...).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sarbandit_core::algorithms::{run, sar_schedule as core_sar_schedule, Decision};
use sarbandit_core::complexity::{
    bound_theorem1 as core_bound1, bound_theorem2 as core_bound2, complexity_m_best,
    complexity_multibandit,
};
use sarbandit_core::config::{builtin_experiment, parse_strategy};
use sarbandit_core::simulation::{
    estimate_error as core_estimate, exact_error_enumeration, suggest_budget as core_suggest,
    DEFAULT_TRIALS,
};
use sarbandit_core::{
    BanditInstance as CoreInstance, MultiBanditInstance as CoreMulti, RngStream, Task,
};

fn py_err(e: sarbandit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn build_instance(means: &[f64], distribution: &str) -> PyResult<CoreInstance> {
    match distribution {
        "bernoulli" => CoreInstance::bernoulli(means),
        "point_mass" => CoreInstance::point_mass(means),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown distribution {other:?}, expected \"bernoulli\" or \"point_mass\""
            )))
        }
    }
    .map_err(py_err)
}

/// A single bandit problem with Bernoulli or point-mass arms.
#[pyclass(frozen, from_py_object, name = "BanditInstance")]
#[derive(Clone)]
struct BanditInstance {
    inner: CoreInstance,
}

#[pymethods]
impl BanditInstance {
    #[new]
    #[pyo3(signature = (means, distribution = "bernoulli"))]
    fn new(means: Vec<f64>, distribution: &str) -> PyResult<Self> {
        Ok(Self {
            inner: build_instance(&means, distribution)?,
        })
    }

    #[getter]
    fn num_arms(&self) -> usize {
        self.inner.num_arms()
    }

    #[getter]
    fn means(&self) -> Vec<f64> {
        self.inner.true_means()
    }

    fn is_correct(&self, m: usize, selected: Vec<usize>) -> PyResult<bool> {
        sarbandit_core::model::is_correct_selection(&self.inner, m, &selected).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("BanditInstance({:?})", self.inner.true_means())
    }
}

/// Several independent problems with the same number of arms.
#[pyclass(frozen, from_py_object, name = "MultiBanditInstance")]
#[derive(Clone)]
struct MultiBanditInstance {
    inner: CoreMulti,
}

#[pymethods]
impl MultiBanditInstance {
    #[new]
    #[pyo3(signature = (rows, distribution = "bernoulli"))]
    fn new(rows: Vec<Vec<f64>>, distribution: &str) -> PyResult<Self> {
        let problems = rows
            .iter()
            .map(|r| build_instance(r, distribution))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: CoreMulti::new(problems).map_err(py_err)?,
        })
    }

    #[getter]
    fn num_problems(&self) -> usize {
        self.inner.num_problems()
    }

    #[getter]
    fn arms_per_problem(&self) -> usize {
        self.inner.arms_per_problem()
    }

    #[getter]
    fn means(&self) -> Vec<Vec<f64>> {
        self.inner.true_means()
    }

    fn is_correct(&self, selected: Vec<usize>) -> PyResult<bool> {
        sarbandit_core::model::is_correct_multibandit(&self.inner, &selected).map_err(py_err)
    }
}

/// Outcome of one run. `events` holds `(phase, arm, "accept" | "reject")`,
/// with flat arm ids `problem * K + arm` for multi-bandit runs.
#[pyclass(frozen, get_all, name = "SelectionResult")]
struct SelectionResult {
    selected: Vec<usize>,
    pulls: Vec<u64>,
    events: Vec<(usize, usize, &'static str)>,
    total_pulls: u64,
}

#[pyclass(frozen, get_all, name = "ErrorEstimate")]
struct ErrorEstimate {
    p_hat: f64,
    trials: u64,
    errors: u64,
    ci_low: f64,
    ci_high: f64,
    master_seed: u64,
}

#[pymethods]
impl ErrorEstimate {
    fn __repr__(&self) -> String {
        format!(
            "ErrorEstimate(p_hat={}, errors={}, trials={}, ci=({}, {}))",
            self.p_hat, self.errors, self.trials, self.ci_low, self.ci_high
        )
    }
}

#[pyclass(frozen, get_all, name = "ComplexityReport")]
struct ComplexityReport {
    h1: f64,
    h2: f64,
    count: usize,
    sorted_gaps: Vec<f64>,
}

impl From<sarbandit_core::ErrorEstimate> for ErrorEstimate {
    fn from(e: sarbandit_core::ErrorEstimate) -> Self {
        Self {
            p_hat: e.p_hat,
            trials: e.trials,
            errors: e.errors,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            master_seed: e.master_seed,
        }
    }
}

impl From<sarbandit_core::ComplexityReport> for ComplexityReport {
    fn from(r: sarbandit_core::ComplexityReport) -> Self {
        Self {
            h1: r.h1,
            h2: r.h2,
            count: r.count(),
            sorted_gaps: r.sorted_gaps,
        }
    }
}

/// Either kind of instance, as passed from Python.
#[derive(FromPyObject)]
enum AnyInstance {
    MBest(BanditInstance),
    Multi(MultiBanditInstance),
}

fn task(instance: AnyInstance, m: Option<usize>) -> PyResult<Task> {
    match (instance, m) {
        (AnyInstance::MBest(i), Some(m)) => Task::m_best(i.inner, m).map_err(py_err),
        (AnyInstance::MBest(_), None) => {
            Err(PyValueError::new_err("m is required for a BanditInstance"))
        }
        (AnyInstance::Multi(i), None) => Ok(Task::MultiBandit(i.inner)),
        (AnyInstance::Multi(_), Some(_)) => Err(PyValueError::new_err(
            "m is not used with a MultiBanditInstance",
        )),
    }
}

/// Runs `strategy` once with the random stream of `(seed, trial)`.
#[pyfunction]
#[pyo3(signature = (instance, strategy, n, m = None, seed = 0, trial = 0))]
fn run_strategy(
    instance: AnyInstance,
    strategy: &str,
    n: u64,
    m: Option<usize>,
    seed: u64,
    trial: u64,
) -> PyResult<SelectionResult> {
    let task = task(instance, m)?;
    let spec = parse_strategy(strategy).map_err(py_err)?;
    let strategy = spec.build(&task, n).map_err(py_err)?;
    let r = run(
        strategy,
        &task.flat_arms(),
        &mut RngStream::new(seed, trial),
    );
    Ok(SelectionResult {
        selected: r.selected,
        pulls: r.pulls,
        events: r
            .events
            .iter()
            .map(|e| {
                let d = match e.decision {
                    Decision::Accept => "accept",
                    Decision::Reject => "reject",
                };
                (e.phase, e.arm, d)
            })
            .collect(),
        total_pulls: r.total_pulls,
    })
}

/// Monte Carlo misidentification probability over `trials` seeded runs.
#[pyfunction]
#[pyo3(signature = (instance, strategy, n, m = None, trials = DEFAULT_TRIALS, seed = 0))]
fn estimate_error(
    py: Python<'_>,
    instance: AnyInstance,
    strategy: &str,
    n: u64,
    m: Option<usize>,
    trials: u64,
    seed: u64,
) -> PyResult<ErrorEstimate> {
    let task = task(instance, m)?;
    let spec = parse_strategy(strategy).map_err(py_err)?;
    py.detach(|| core_estimate(&task, &spec, n, trials, seed))
        .map(ErrorEstimate::from)
        .map_err(py_err)
}

/// Exact misidentification probability by enumerating Bernoulli outcomes.
#[pyfunction]
#[pyo3(signature = (instance, strategy, n, m = None))]
fn exact_error(instance: AnyInstance, strategy: &str, n: u64, m: Option<usize>) -> PyResult<f64> {
    let task = task(instance, m)?;
    let spec = parse_strategy(strategy).map_err(py_err)?;
    exact_error_enumeration(&task, &spec, n).map_err(py_err)
}

/// Hardness of an m-best instance, or of a multi-bandit instance when `m` is omitted.
#[pyfunction]
#[pyo3(signature = (instance, m = None))]
fn complexity(instance: AnyInstance, m: Option<usize>) -> PyResult<ComplexityReport> {
    match task(instance, m)? {
        Task::MBest { instance, m } => complexity_m_best(&instance.true_means(), m),
        Task::MultiBandit(multi) => complexity_multibandit(&multi),
    }
    .map(ComplexityReport::from)
    .map_err(py_err)
}

#[pyfunction]
fn bound_theorem1(n: u64, k: usize, h2: f64) -> PyResult<f64> {
    core_bound1(n, k, h2).map_err(py_err)
}

#[pyfunction]
fn bound_theorem2(n: u64, problems: usize, k: usize, h2: f64) -> PyResult<f64> {
    core_bound2(n, problems, k, h2).map_err(py_err)
}

/// Cumulative per-arm pull targets of SAR's phases.
#[pyfunction]
fn sar_schedule(n: u64, k: usize) -> PyResult<Vec<u64>> {
    core_sar_schedule(n, k)
        .map(|s| s.cumulative)
        .map_err(py_err)
}

#[pyfunction]
fn suggest_budget(instance: &BanditInstance, m_values: Vec<usize>) -> PyResult<u64> {
    core_suggest(&instance.inner, &m_values).map_err(py_err)
}

/// Runs builtin experiment `number` (1..6) and returns one dict per row.
#[pyfunction]
#[pyo3(signature = (number, trials = None, seed = None))]
fn run_experiment(
    py: Python<'_>,
    number: usize,
    trials: Option<u64>,
    seed: Option<u64>,
) -> PyResult<Vec<Py<pyo3::types::PyDict>>> {
    let mut config = builtin_experiment(number).map_err(py_err)?;
    config.trials = trials.unwrap_or(config.trials);
    config.seed = seed.unwrap_or(config.seed);
    let result = py.detach(|| config.sweep()).map_err(py_err)?;
    result
        .rows
        .iter()
        .map(|row| {
            let d = pyo3::types::PyDict::new(py);
            d.set_item("experiment", &row.experiment)?;
            d.set_item("strategy", row.strategy.to_string())?;
            d.set_item("m", row.m)?;
            d.set_item("n", row.n)?;
            d.set_item("trials", row.estimate.trials)?;
            d.set_item("errors", row.estimate.errors)?;
            d.set_item("p_hat", row.estimate.p_hat)?;
            d.set_item("ci_low", row.estimate.ci_low)?;
            d.set_item("ci_high", row.estimate.ci_high)?;
            d.set_item("bound", row.bound)?;
            Ok(d.unbind())
        })
        .collect()
}

#[pymodule]
fn sarbandit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<BanditInstance>()?;
    m.add_class::<MultiBanditInstance>()?;
    m.add_class::<SelectionResult>()?;
    m.add_class::<ErrorEstimate>()?;
    m.add_class::<ComplexityReport>()?;
    m.add_function(wrap_pyfunction!(run_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_error, m)?)?;
    m.add_function(wrap_pyfunction!(exact_error, m)?)?;
    m.add_function(wrap_pyfunction!(complexity, m)?)?;
    m.add_function(wrap_pyfunction!(bound_theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(bound_theorem2, m)?)?;
    m.add_function(wrap_pyfunction!(sar_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(suggest_budget, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
