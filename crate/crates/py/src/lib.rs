//! Python bindings: the game, the three subproblem solvers, full runs and
//! trace IO.

use std::fs::File;
use std::io::BufWriter;

use advgrad::{Error, InitialPoint, Method, PenaltyWeight, PlayerSense, SimplexVector, SolverConfig};
use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Numeric(_) => PyArithmeticError::new_err(err.to_string()),
        Error::Io(_) => PyOSError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn simplex(coords: Vec<f64>) -> PyResult<SimplexVector> {
    SimplexVector::new(coords).map_err(to_py)
}

fn sense(name: &str) -> PyResult<PlayerSense> {
    match name {
        "max" | "maximizer" => Ok(PlayerSense::Maximizer),
        "min" | "minimizer" => Ok(PlayerSense::Minimizer),
        other => Err(PyValueError::new_err(format!(
            "sense must be 'max' or 'min', got {other:?}"
        ))),
    }
}

fn beta(value: f64) -> PyResult<PenaltyWeight> {
    PenaltyWeight::new(value).map_err(to_py)
}

#[pyclass(name = "RewardMatrix", frozen)]
struct PyRewardMatrix {
    inner: advgrad::RewardMatrix,
}

#[pymethods]
impl PyRewardMatrix {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        advgrad::RewardMatrix::new(rows)
            .map(|inner| PyRewardMatrix { inner })
            .map_err(to_py)
    }

    /// Rock-paper-scissors, strategies ordered rock, paper, scissors.
    #[staticmethod]
    fn rps() -> Self {
        PyRewardMatrix {
            inner: advgrad::RewardMatrix::rps(),
        }
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        advgrad::load_matrix(path)
            .map(|inner| PyRewardMatrix { inner })
            .map_err(to_py)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.rows().map(|r| r.to_vec()).collect()
    }

    fn payoff(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
        self.inner.payoff(&simplex(x)?, &simplex(y)?).map_err(to_py)
    }

    fn grad_x(&self, y: Vec<f64>) -> PyResult<Vec<f64>> {
        self.inner.grad_x(&simplex(y)?).map_err(to_py)
    }

    fn grad_y(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        self.inner.grad_y(&simplex(x)?).map_err(to_py)
    }

    /// `(upper, lower)` best-response values against the given means.
    fn bounds(&self, x_hat: Vec<f64>, y_hat: Vec<f64>) -> PyResult<(f64, f64)> {
        advgrad::bounds(&self.inner, &simplex(x_hat)?, &simplex(y_hat)?).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("RewardMatrix({:?})", self.rows())
    }
}

#[pyclass(name = "SubproblemResult", frozen)]
struct PySubproblemResult {
    #[pyo3(get)]
    solution: Vec<f64>,
    #[pyo3(get)]
    active_set: Vec<usize>,
    #[pyo3(get)]
    lambda_: Option<f64>,
}

impl From<advgrad::SubproblemResult> for PySubproblemResult {
    fn from(r: advgrad::SubproblemResult) -> Self {
        PySubproblemResult {
            solution: r.solution.into_inner(),
            active_set: r.active_set,
            lambda_: r.lambda,
        }
    }
}

#[pyfunction]
fn cg_vertex(g: Vec<f64>, sense_name: &str) -> PyResult<PySubproblemResult> {
    advgrad::cg_vertex(&g, sense(sense_name)?)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn euclidean_prox(g: Vec<f64>, v_k: Vec<f64>, penalty: f64, sense_name: &str) -> PyResult<PySubproblemResult> {
    advgrad::euclidean_prox(&g, &simplex(v_k)?, beta(penalty)?, sense(sense_name)?)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn kl_prox(g: Vec<f64>, v_k: Vec<f64>, penalty: f64, sense_name: &str) -> PyResult<PySubproblemResult> {
    advgrad::kl_prox(&g, &simplex(v_k)?, beta(penalty)?, sense(sense_name)?)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn kkt_satisfied(grad: Vec<f64>, v: Vec<f64>, tol: f64) -> PyResult<bool> {
    advgrad::kkt_satisfied(&grad, &simplex(v)?, tol).map_err(to_py)
}

#[pyclass(name = "IterationRecord", frozen)]
struct PyIterationRecord {
    #[pyo3(get)]
    k: usize,
    #[pyo3(get)]
    x: Vec<f64>,
    #[pyo3(get)]
    y: Vec<f64>,
    #[pyo3(get)]
    x_hat: Vec<f64>,
    #[pyo3(get)]
    y_hat: Vec<f64>,
    #[pyo3(get)]
    reward: f64,
    #[pyo3(get)]
    upper: f64,
    #[pyo3(get)]
    lower: f64,
    #[pyo3(get)]
    gap: f64,
}

#[pyclass(name = "RunResult", frozen)]
struct PyRunResult {
    inner: advgrad::RunResult,
}

#[pymethods]
impl PyRunResult {
    #[getter]
    fn records(&self) -> Vec<PyIterationRecord> {
        self.inner
            .records
            .iter()
            .map(|r| PyIterationRecord {
                k: r.k,
                x: r.x.as_slice().to_vec(),
                y: r.y.as_slice().to_vec(),
                x_hat: r.x_hat.as_slice().to_vec(),
                y_hat: r.y_hat.as_slice().to_vec(),
                reward: r.reward,
                upper: r.upper,
                lower: r.lower,
                gap: r.gap,
            })
            .collect()
    }

    #[getter]
    fn final_x_hat(&self) -> Vec<f64> {
        self.inner.final_x_hat.as_slice().to_vec()
    }

    #[getter]
    fn final_y_hat(&self) -> Vec<f64> {
        self.inner.final_y_hat.as_slice().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.records.len()
    }

    /// Writes the CSV trace to `path`.
    fn write_trace(&self, path: &str) -> PyResult<()> {
        let file = File::create(path).map_err(|e| to_py(e.into()))?;
        advgrad::write_trace(BufWriter::new(file), &self.inner).map_err(to_py)
    }

    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        advgrad::write_trace(&mut buf, &self.inner).map_err(to_py)?;
        Ok(String::from_utf8(buf).expect("trace is ASCII"))
    }
}

#[pyfunction]
#[pyo3(signature = (matrix, method, alpha, beta=None, iterations=1000, init_x=None, init_y=None, record_every=1))]
#[allow(clippy::too_many_arguments)]
fn run(
    py: Python<'_>,
    matrix: &PyRewardMatrix,
    method: &str,
    alpha: f64,
    beta: Option<f64>,
    iterations: usize,
    init_x: Option<Vec<f64>>,
    init_y: Option<Vec<f64>>,
    record_every: usize,
) -> PyResult<PyRunResult> {
    let init = |v: Option<Vec<f64>>| -> PyResult<InitialPoint> {
        Ok(match v {
            Some(c) => InitialPoint::Given(simplex(c)?),
            None => InitialPoint::Uniform,
        })
    };
    let mut config = SolverConfig::new(method.parse::<Method>().map_err(to_py)?, alpha)
        .with_iterations(iterations)
        .with_record_every(record_every)
        .with_init(init(init_x)?, init(init_y)?);
    config.beta = beta;
    let game = &matrix.inner;
    py.detach(|| advgrad::run(game, &config))
        .map(|inner| PyRunResult { inner })
        .map_err(to_py)
}

/// Reads a CSV trace into a dict of columns.
#[pyfunction]
fn read_trace(py: Python<'_>, path: &str) -> PyResult<Py<pyo3::types::PyDict>> {
    use pyo3::types::PyDict;
    let table = advgrad::read_trace(File::open(path).map_err(|e| to_py(e.into()))?).map_err(to_py)?;
    let dict = PyDict::new(py);
    dict.set_item("n", table.n)?;
    dict.set_item("iter", table.rows.iter().map(|r| r.iter).collect::<Vec<_>>())?;
    dict.set_item("reward", table.rows.iter().map(|r| r.reward).collect::<Vec<_>>())?;
    dict.set_item("upper", table.rows.iter().map(|r| r.upper).collect::<Vec<_>>())?;
    dict.set_item("lower", table.rows.iter().map(|r| r.lower).collect::<Vec<_>>())?;
    dict.set_item("gap", table.rows.iter().map(|r| r.gap).collect::<Vec<_>>())?;
    dict.set_item("x", table.rows.iter().map(|r| r.x.clone()).collect::<Vec<_>>())?;
    dict.set_item("y", table.rows.iter().map(|r| r.y.clone()).collect::<Vec<_>>())?;
    dict.set_item("x_hat", table.rows.iter().map(|r| r.x_hat.clone()).collect::<Vec<_>>())?;
    dict.set_item("y_hat", table.rows.iter().map(|r| r.y_hat.clone()).collect::<Vec<_>>())?;
    Ok(dict.unbind())
}

#[pymodule(name = "advgrad")]
fn advgrad_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRewardMatrix>()?;
    m.add_class::<PySubproblemResult>()?;
    m.add_class::<PyIterationRecord>()?;
    m.add_class::<PyRunResult>()?;
    m.add_function(wrap_pyfunction!(cg_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(euclidean_prox, m)?)?;
    m.add_function(wrap_pyfunction!(kl_prox, m)?)?;
    m.add_function(wrap_pyfunction!(kkt_satisfied, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(read_trace, m)?)?;
    Ok(())
}
