//! Python bindings: `import fsind`.
//!
//! Groups, forms and categories are wrapped as classes; tables and rigidity
//! reports come back as plain dicts and lists.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use fsind_core::indicators::{self, indicator_period, nu_agl_bruteforce};
use fsind_core::qforms::{jacobi_symbol as core_jacobi, QZValue};
use fsind_core::tables::{self, ReportFormat};
use fsind_core::{CategorySpec, FiniteAbelianGroup, QuadraticForm};

create_exception!(fsind, FsindError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    FsindError::new_err(e.to_string())
}

/// Round-trips a serializable value through `json.loads`.
fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

fn fraction<'py>(py: Python<'py>, num: i64, den: i64) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((num, den))
}

fn qz<'py>(py: Python<'py>, v: QZValue) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, v.numerator() as i64, v.denominator() as i64)
}

fn orientation_name(o: fsind_core::Orientation) -> String {
    serde_json::to_value(o).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EvalPath {
    Center,
    Closed,
}

impl EvalPath {
    fn parse(s: &str) -> PyResult<Self> {
        match s {
            "center" => Ok(EvalPath::Center),
            "closed" => Ok(EvalPath::Closed),
            other => Err(err(format!("path must be 'center' or 'closed', got {other:?}"))),
        }
    }
}

/// `Z/n_1 x ... x Z/n_r`, e.g. `FiniteAbelianGroup([3, 3])`.
#[pyclass(name = "FiniteAbelianGroup", module = "fsind", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGroup(pub FiniteAbelianGroup);

#[pymethods]
impl PyGroup {
    #[new]
    fn new(cyclic_factors: Vec<u64>) -> PyResult<Self> {
        FiniteAbelianGroup::new(cyclic_factors).map(PyGroup).map_err(err)
    }

    #[staticmethod]
    fn cyclic(n: u64) -> PyResult<Self> {
        FiniteAbelianGroup::cyclic(n).map(PyGroup).map_err(err)
    }

    #[getter]
    fn cyclic_factors(&self) -> Vec<u64> {
        self.0.cyclic_factors().to_vec()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.0.order()
    }

    #[getter]
    fn exponent(&self) -> u64 {
        self.0.exponent()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    /// All elements as residue tuples, in lexicographic order.
    fn elements(&self) -> Vec<Vec<u64>> {
        self.0.elements().iter().map(|g| g.residues().to_vec()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.order() as usize
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FiniteAbelianGroup({:?})", self.0.cyclic_factors())
    }
}

/// A quadratic form `q: G -> Q/Z`, e.g. `QuadraticForm(FiniteAbelianGroup([13]), "2g^2/13")`.
#[pyclass(name = "QuadraticForm", module = "fsind", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyForm(pub QuadraticForm);

#[pymethods]
impl PyForm {
    #[new]
    fn new(group: &PyGroup, text: &str) -> PyResult<Self> {
        QuadraticForm::parse(group.0.clone(), text).map(PyForm).map_err(err)
    }

    /// `c g^2 / n` on `Z/n`.
    #[staticmethod]
    fn cyclic(n: u64, c: i64) -> PyResult<Self> {
        QuadraticForm::cyclic(n, c).map(PyForm).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyForm).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup(self.0.group().clone())
    }

    /// `q(g)` as a `Fraction` in `[0, 1)`.
    fn value<'py>(&self, py: Python<'py>, residues: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        let g = self.0.group().element(&residues).map_err(err)?;
        qz(py, self.0.value(&g).map_err(err)?)
    }

    fn values<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self.0.values().iter().map(|&v| qz(py, v)).collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn scale(&self, k: i64) -> Self {
        PyForm(self.0.scale(k))
    }

    fn is_nondegenerate(&self) -> bool {
        self.0.is_nondegenerate()
    }

    /// Normalized Gauss sum of `k q`.
    #[pyo3(signature = (k = 1))]
    fn gauss_sum(&self, k: i64) -> Complex64 {
        self.0.scale(k).gauss_sum()
    }

    fn __str__(&self) -> String {
        self.0.describe()
    }

    fn __repr__(&self) -> String {
        format!("QuadraticForm({}, {:?})", self.0.group(), self.0.describe())
    }
}

/// A categorification of a near-group or Haagerup-Izumi fusion ring,
/// built from its JSON description.
#[pyclass(name = "Category", module = "fsind", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyCategory(pub CategorySpec);

#[pymethods]
impl PyCategory {
    #[new]
    fn new(spec_json: &str) -> PyResult<Self> {
        let spec: CategorySpec = serde_json::from_str(spec_json).map_err(err)?;
        spec.validate().map_err(err)?;
        Ok(PyCategory(spec))
    }

    /// A builtin table row, e.g. `Category.from_row("ng9:1")`.
    #[staticmethod]
    fn from_row(id: &str) -> PyResult<Self> {
        let (table, row) = id.split_once(':').ok_or_else(|| err(format!("row {id:?} should look like ng9:1")))?;
        let row: usize = row.parse().map_err(|_| err(format!("bad row number in {id:?}")))?;
        tables::select_rows(Some(table))
            .map_err(err)?
            .into_iter()
            .find(|r| r.row_id == row)
            .map(|r| PyCategory(r.spec))
            .ok_or_else(|| err(format!("table {table} has no row {row}")))
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.0.family()
    }

    #[getter]
    fn label(&self) -> Option<String> {
        self.0.label().map(str::to_owned)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    /// `(calibrated category, orientation)` where orientation is one of
    /// `"as_given"`, `"flipped"`, `"unresolved"`.
    fn calibrate(&self) -> PyResult<(PyCategory, String)> {
        let (spec, o) = self.0.calibrate().map_err(err)?;
        Ok((PyCategory(spec), orientation_name(o)))
    }

    fn conjugate(&self) -> Self {
        PyCategory(self.0.conjugate())
    }

    /// Period of `k -> nu_k(rho)` for the calibrated category.
    fn period(&self) -> PyResult<u64> {
        let (spec, _) = self.0.calibrate().map_err(err)?;
        let center = spec.raw_center().map_err(err)?;
        Ok(indicator_period(&spec, &center))
    }

    /// `nu_k(rho)` of the calibrated category.
    #[pyo3(signature = (k, path = "center"))]
    fn nu(&self, k: u64, path: &str) -> PyResult<Complex64> {
        if k == 0 {
            return Err(err("k must be positive"));
        }
        let (spec, _) = self.0.calibrate().map_err(err)?;
        match EvalPath::parse(path)? {
            EvalPath::Center => spec.raw_center().and_then(|c| c.nu(&spec.rho_label(), k as i64)).map_err(err),
            EvalPath::Closed => indicators::nu_closed(&spec, k).map_err(err),
        }
    }

    /// `[nu_1, ..., nu_kmax]`; `kmax` defaults to one period.
    #[pyo3(signature = (kmax = None, path = "center"))]
    fn indicators(&self, kmax: Option<u64>, path: &str) -> PyResult<Vec<Complex64>> {
        let path = EvalPath::parse(path)?;
        let v = match path {
            EvalPath::Center => indicators::indicator_vector(&self.0),
            EvalPath::Closed => indicators::indicator_vector_closed(&self.0),
        }
        .map_err(err)?;
        let kmax = kmax.unwrap_or(v.period);
        Ok((1..=kmax).map(|k| v.at(k)).collect())
    }

    /// Center objects as dicts with `label`, `twist`, `qdim`, `mult`.
    fn center<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let c = self.0.center().map_err(err)?;
        to_py(py, &c.objects)
    }

    fn __repr__(&self) -> String {
        self.0.describe()
    }
}

#[pyfunction]
fn jacobi_symbol(a: i64, n: i64) -> PyResult<i8> {
    core_jacobi(a, n).map_err(err)
}

/// Exact `nu_k` of the `(q-1)`-dimensional irreducible of `AGL_1(F_q)`.
#[pyfunction]
fn agl_indicator<'py>(py: Python<'py>, q: u64, k: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = nu_agl_bruteforce(q, k).map_err(err)?;
    fraction(py, *r.numer(), *r.denom())
}

/// Builtin table rows as dicts, optionally restricted to one table.
#[pyfunction]
#[pyo3(signature = (table = None))]
fn builtin_rows<'py>(py: Python<'py>, table: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &tables::select_rows(table).map_err(err)?)
}

/// Per-row verification reports as dicts.
#[pyfunction]
#[pyo3(signature = (table = None, tolerance = fsind_core::TOLERANCE))]
fn verify_tables<'py>(py: Python<'py>, table: Option<&str>, tolerance: f64) -> PyResult<Bound<'py, PyAny>> {
    let rows = tables::select_rows(table).map_err(err)?;
    let reports = py.detach(|| tables::verify_all(&rows, tolerance)).map_err(err)?;
    to_py(py, &reports)
}

/// The verification report rendered as `"csv"`, `"json"` or `"markdown"`.
#[pyfunction]
#[pyo3(signature = (table = None, format = "markdown", tolerance = fsind_core::TOLERANCE))]
fn table_report(py: Python<'_>, table: Option<&str>, format: &str, tolerance: f64) -> PyResult<String> {
    let format: ReportFormat = format.parse().map_err(err)?;
    let rows = tables::select_rows(table).map_err(err)?;
    let reports = py.detach(|| tables::verify_all(&rows, tolerance)).map_err(err)?;
    tables::emit_report(&reports, format).map_err(err)
}

/// Partitions categories on one fusion ring by their indicator vectors.
#[pyfunction]
#[pyo3(signature = (categories, kmax = None))]
fn rigidity<'py>(py: Python<'py>, categories: Vec<PyCategory>, kmax: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let specs: Vec<CategorySpec> = categories.into_iter().map(|c| c.0).collect();
    let report = py.detach(|| indicators::rigidity_report_upto(&specs, None, kmax)).map_err(err)?;
    to_py(
        py,
        &serde_json::json!({
            "period": report.period,
            "compared_up_to": report.horizon,
            "classes": report.classes,
            "separations": report.separations,
        }),
    )
}

#[pymodule]
fn fsind(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds the module's classes, functions and constants to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FsindError", m.py().get_type::<FsindError>())?;
    m.add("TOLERANCE", fsind_core::TOLERANCE)?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyForm>()?;
    m.add_class::<PyCategory>()?;
    m.add_function(wrap_pyfunction!(jacobi_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(agl_indicator, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_rows, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    m.add_function(wrap_pyfunction!(table_report, m)?)?;
    m.add_function(wrap_pyfunction!(rigidity, m)?)?;
    Ok(())
}
