use bks_core::coloring::{brute_force, decide, identify, Semantics};
use bks_core::ensemble::Ensemble;
use bks_core::minimality::{self, TheoremId};
use bks_core::operator::{format_rational, parse_rational, QubitOperator, QubitState, Rational};
use bks_core::report::{to_line, SweepRecord, TheoremRecord, VerdictRecord};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(text: &str) -> PyResult<Rational> {
    parse_rational(text).map_err(|e| value_error(format!("`{text}`: {e}")))
}

fn semantics(text: &str) -> PyResult<Semantics> {
    text.parse().map_err(value_error)
}

/// Records cross into Python as plain dicts with the CLI's field names.
fn record_to_py<'py>(py: Python<'py>, line: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (line,))
}

/// Hermitian qubit operator `alpha·1 + r·σ` with exact rational
/// coefficients given as strings such as `"1/2"`.
#[pyclass(name = "Operator", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyOperator {
    inner: QubitOperator,
}

#[pymethods]
impl PyOperator {
    #[new]
    fn new(alpha: &str, r: (String, String, String)) -> PyResult<Self> {
        Ok(PyOperator {
            inner: QubitOperator::new(rational(alpha)?, [rational(&r.0)?, rational(&r.1)?, rational(&r.2)?]),
        })
    }

    #[getter]
    fn alpha(&self) -> String {
        format_rational(self.inner.alpha())
    }

    #[getter]
    fn r(&self) -> (String, String, String) {
        let [x, y, z] = self.inner.bloch();
        (format_rational(x), format_rational(y), format_rational(z))
    }

    fn is_psd(&self) -> bool {
        self.inner.is_psd()
    }

    fn complement(&self) -> Self {
        PyOperator {
            inner: self.inner.complement(),
        }
    }

    /// `gamma` with `other = gamma * self`, or `None`.
    fn proportionality(&self, other: &PyOperator) -> PyResult<Option<String>> {
        self.inner
            .proportionality(&other.inner)
            .map(|g| g.as_ref().map(format_rational))
            .map_err(value_error)
    }

    fn norm_exceeds_half(&self) -> PyResult<bool> {
        self.inner.norm_exceeds_half().map_err(value_error)
    }

    /// `Tr(rho M)` for the state with Bloch vector `s`.
    fn born_probability(&self, s: (String, String, String)) -> PyResult<String> {
        let state = QubitState::new([rational(&s.0)?, rational(&s.1)?, rational(&s.2)?])
            .map_err(value_error)?;
        self.inner
            .born_probability(&state)
            .map(|p| format_rational(&p))
            .map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Operator({})", self.inner)
    }
}

#[pyclass(name = "Ensemble", frozen)]
struct PyEnsemble {
    inner: Ensemble,
}

#[pymethods]
impl PyEnsemble {
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ensemble::builtin(name)
            .map(|inner| PyEnsemble { inner })
            .map_err(value_error)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ensemble::parse(text)
            .map(|inner| PyEnsemble { inner })
            .map_err(value_error)
    }

    #[new]
    fn new(name: &str, povms: Vec<Vec<PyOperator>>) -> Self {
        let povms = povms
            .into_iter()
            .map(|p| bks_core::Povm::new(p.into_iter().map(|o| o.inner).collect()))
            .collect();
        PyEnsemble {
            inner: Ensemble::new(name, povms),
        }
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn shape(&self) -> Vec<usize> {
        self.inner.shape()
    }

    fn povms(&self) -> Vec<Vec<PyOperator>> {
        self.inner
            .povms()
            .iter()
            .map(|p| p.elements().iter().map(|m| PyOperator { inner: m.clone() }).collect())
            .collect()
    }

    /// Validation issues; empty when the ensemble is valid.
    fn validate(&self) -> Vec<String> {
        self.inner
            .validate()
            .issues
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn to_text(&self) -> String {
        self.inner.serialize()
    }

    fn __repr__(&self) -> String {
        format!("Ensemble({:?}, shape={:?})", self.inner.name(), self.inner.shape())
    }
}

/// Colors an ensemble; returns the same record as `bks color --output record`.
#[pyfunction]
#[pyo3(signature = (ensemble, semantics, oracle = false))]
fn color<'py>(
    py: Python<'py>,
    ensemble: &PyEnsemble,
    semantics: &str,
    oracle: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let sem = self::semantics(semantics)?;
    let problem = identify(&ensemble.inner, sem).map_err(value_error)?;
    let verdict = decide(&problem);
    let agrees = if oracle {
        let reference = brute_force(&problem).map_err(value_error)?;
        Some(reference.is_colorable() == verdict.is_colorable())
    } else {
        None
    };
    let rec = VerdictRecord::new(ensemble.inner.name(), sem, &problem, &verdict, agrees);
    record_to_py(py, to_line(&rec))
}

#[pyfunction]
#[pyo3(signature = (shape, semantics, list_uncolorable = true))]
fn sweep<'py>(
    py: Python<'py>,
    shape: Vec<usize>,
    semantics: &str,
    list_uncolorable: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let sem = self::semantics(semantics)?;
    let report = py
        .detach(|| minimality::sweep(&shape, sem))
        .map_err(value_error)?;
    record_to_py(py, to_line(&SweepRecord::new(&report, list_uncolorable)))
}

#[pyfunction]
fn verify_theorem<'py>(py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyAny>> {
    let id: TheoremId = id.parse().map_err(value_error)?;
    let report = py.detach(|| minimality::verify_theorem(id));
    record_to_py(py, to_line(&TheoremRecord::new(&report)))
}

#[pymodule]
fn bks(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperator>()?;
    m.add_class::<PyEnsemble>()?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    Ok(())
}
