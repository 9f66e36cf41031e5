//! Python bindings: eventually periodic sets, orders, removal parameters,
//! bounds and the cyclic-group checks.

use addbasis_core::basis::{self, RemovalParameters, DEFAULT_ORDER_CAP};
use addbasis_core::bounds::{self, BoundValue};
use addbasis_core::harness::{verify_suites, VerifyConfig};
use addbasis_core::residue::{self, ResidueSet};
use addbasis_core::{Error, EventuallyPeriodicSet, FiniteIntSet};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(addbasis, AddBasisError, PyValueError);
create_exception!(addbasis, NotABasisError, AddBasisError);
create_exception!(addbasis, CapExceededError, AddBasisError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotABasis(_) | Error::FiniteSet => NotABasisError::new_err(e.to_string()),
        Error::CapExceeded(_) => CapExceededError::new_err(e.to_string()),
        other => AddBasisError::new_err(other.to_string()),
    }
}

/// `exceptional ∪ {x >= threshold : x mod modulus ∈ residues}` in canonical form.
#[pyclass(
    name = "EventuallyPeriodicSet",
    module = "addbasis",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PySet {
    inner: EventuallyPeriodicSet,
}

impl From<EventuallyPeriodicSet> for PySet {
    fn from(inner: EventuallyPeriodicSet) -> Self {
        PySet { inner }
    }
}

#[pymethods]
impl PySet {
    #[new]
    #[pyo3(signature = (exceptional, threshold, modulus, residues))]
    fn new(
        exceptional: Vec<i64>,
        threshold: i64,
        modulus: u64,
        residues: Vec<u64>,
    ) -> PyResult<Self> {
        EventuallyPeriodicSet::new(exceptional, threshold, modulus, residues)
            .map(Self::from)
            .map_err(to_py)
    }

    #[staticmethod]
    fn finite(elements: Vec<i64>) -> Self {
        EventuallyPeriodicSet::from(&FiniteIntSet::from(elements)).into()
    }

    #[staticmethod]
    fn naturals() -> Self {
        EventuallyPeriodicSet::naturals().into()
    }

    #[getter]
    fn exceptional(&self) -> Vec<i64> {
        self.inner.exceptional().to_vec()
    }

    #[getter]
    fn threshold(&self) -> i64 {
        self.inner.threshold()
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.modulus()
    }

    #[getter]
    fn residues(&self) -> Vec<u64> {
        self.inner.residues()
    }

    fn __contains__(&self, x: i64) -> bool {
        self.inner.contains(x)
    }

    fn __add__(&self, other: &PySet) -> PyResult<Self> {
        self.sumset(other)
    }

    fn __or__(&self, other: &PySet) -> Self {
        self.inner.union(&other.inner).into()
    }

    fn __repr__(&self) -> String {
        format!("EventuallyPeriodicSet({})", self.inner)
    }

    fn sumset(&self, other: &PySet) -> PyResult<Self> {
        self.inner
            .sumset(&other.inner)
            .map(Self::from)
            .map_err(to_py)
    }

    fn nfold(&self, n: u32) -> PyResult<Self> {
        self.inner.nfold(n).map(Self::from).map_err(to_py)
    }

    fn translate(&self, t: i64) -> Self {
        self.inner.translate(t).into()
    }

    fn remove(&self, elements: Vec<i64>) -> Self {
        self.inner
            .remove_finite(&FiniteIntSet::from(elements))
            .into()
    }

    fn window(&self, lo: i64, hi: i64) -> PyResult<Vec<i64>> {
        self.inner
            .enumerate_window(lo, hi)
            .map(|w| w.as_slice().to_vec())
            .map_err(to_py)
    }

    fn count_upto(&self, m: i64) -> u64 {
        self.inner.count_upto(m)
    }

    /// `(numerator, denominator)` of the lower asymptotic density.
    fn lower_density(&self) -> (u64, u64) {
        let d = self.inner.lower_density();
        (*d.numer(), *d.denom())
    }

    fn is_cofinite(&self) -> bool {
        self.inner.is_cofinite()
    }

    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    fn equal_mod_finite(&self, other: &PySet) -> bool {
        self.inner.equal_mod_finite(&other.inner)
    }

    fn saturate_mod(&self, g: u64) -> PyResult<Self> {
        self.inner.saturate_mod(g).map(Self::from).map_err(to_py)
    }

    /// The set literal as JSON.
    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("set literal serializes")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str::<EventuallyPeriodicSet>(text)
            .map(Self::from)
            .map_err(|e| AddBasisError::new_err(e.to_string()))
    }
}

#[pyfunction]
#[pyo3(signature = (a, cap = DEFAULT_ORDER_CAP))]
fn order(a: &PySet, cap: u64) -> PyResult<u64> {
    basis::order(&a.inner, cap).map(|r| r.order).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (a, remove, cap = DEFAULT_ORDER_CAP))]
fn remove_and_order(a: &PySet, remove: Vec<i64>, cap: u64) -> PyResult<u64> {
    basis::remove_and_order(&a.inner, &FiniteIntSet::from(remove), cap)
        .map(|r| r.order)
        .map_err(to_py)
}

#[pyfunction]
fn eventual_gcd(a: &PySet) -> PyResult<u64> {
    basis::eventual_gcd(&a.inner).map_err(to_py)
}

fn params_dict<'py>(py: Python<'py>, p: &RemovalParameters) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("k", p.k)?;
    d.set_item("d", p.d)?;
    d.set_item("eta", p.eta)?;
    d.set_item("mu", p.mu)?;
    Ok(d)
}

/// `{"k", "d", "eta", "mu"}` for removing `remove` from `a`.
#[pyfunction]
fn removal_parameters<'py>(
    py: Python<'py>,
    a: &PySet,
    remove: Vec<i64>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = basis::removal_parameters(&a.inner, &FiniteIntSet::from(remove)).map_err(to_py)?;
    params_dict(py, &p)
}

#[pyfunction]
fn decomposition_check(a: &PySet, remove: Vec<i64>, h: u64) -> PyResult<bool> {
    basis::decomposition_check(&a.inner, &FiniteIntSet::from(remove), h).map_err(to_py)
}

fn exact(b: BoundValue) -> BigUint {
    b.exact_value().expect("certified bound").clone()
}

#[pyfunction]
fn nash_general(h: u64, k: u64) -> BigUint {
    exact(bounds::nash_general(h, k))
}

#[pyfunction]
fn farhi_d(h: u64, d: u64) -> BigUint {
    exact(bounds::farhi_d(h, d))
}

#[pyfunction]
fn farhi_eta(h: u64, eta: u64) -> BigUint {
    exact(bounds::farhi_eta(h, eta))
}

#[pyfunction]
fn farhi_mu(h: u64, mu: u64) -> BigUint {
    exact(bounds::farhi_mu(h, mu))
}

#[pyfunction]
fn remark_d(h: u64, d: u64) -> BigUint {
    exact(bounds::remark_d(h, d))
}

/// Every applicable certified bound as `(name, value)`, ascending.
#[pyfunction]
#[pyo3(signature = (h, k, d, eta, mu, ap = false))]
fn compare_all(h: u64, k: u64, d: u64, eta: u64, mu: u64, ap: bool) -> Vec<(String, BigUint)> {
    let p = RemovalParameters { k, d, eta, mu };
    bounds::compare_all(h, &p, ap)
        .into_iter()
        .map(|b| (b.name.as_str().to_string(), exact(b)))
        .collect()
}

fn residue_set(g: u64, members: Vec<u64>) -> PyResult<ResidueSet> {
    ResidueSet::new(g, members).map_err(to_py)
}

/// Generator of the stabilizer of `members` in `Z/g`.
#[pyfunction]
fn stabilizer(g: u64, members: Vec<u64>) -> PyResult<u64> {
    residue::stabilizer(&residue_set(g, members)?)
        .map(|h| h.generator())
        .map_err(to_py)
}

/// Second Kneser theorem witness for `B + C` in `Z/g`.
#[pyfunction]
fn kneser_witness<'py>(
    py: Python<'py>,
    g: u64,
    b: Vec<u64>,
    c: Vec<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let w = residue::kneser_witness(&residue_set(g, b)?, &residue_set(g, c)?).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("stabilizer", w.subgroup.generator())?;
    d.set_item("absorbs", w.absorbs)?;
    d.set_item("sum_size", w.sum_size)?;
    d.set_item("lower_bound", w.lower_bound)?;
    d.set_item("holds", w.holds())?;
    Ok(d)
}

/// Runs the invariant suites; returns `(name, passed, cases, counterexample)`.
#[pyfunction]
#[pyo3(signature = (seed = 0, max_modulus = 10))]
fn verify(py: Python<'_>, seed: u64, max_modulus: u64) -> Vec<(String, bool, u64, Option<String>)> {
    let config = VerifyConfig {
        seed,
        max_modulus,
        ..VerifyConfig::default()
    };
    py.detach(|| verify_suites(&config))
        .suites
        .into_iter()
        .map(|s| (s.name.to_string(), s.passed, s.cases, s.counterexample))
        .collect()
}

#[pymodule]
fn addbasis(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySet>()?;
    m.add("AddBasisError", m.py().get_type::<AddBasisError>())?;
    m.add("NotABasisError", m.py().get_type::<NotABasisError>())?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add_function(wrap_pyfunction!(order, m)?)?;
    m.add_function(wrap_pyfunction!(remove_and_order, m)?)?;
    m.add_function(wrap_pyfunction!(eventual_gcd, m)?)?;
    m.add_function(wrap_pyfunction!(removal_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(decomposition_check, m)?)?;
    m.add_function(wrap_pyfunction!(nash_general, m)?)?;
    m.add_function(wrap_pyfunction!(farhi_d, m)?)?;
    m.add_function(wrap_pyfunction!(farhi_eta, m)?)?;
    m.add_function(wrap_pyfunction!(farhi_mu, m)?)?;
    m.add_function(wrap_pyfunction!(remark_d, m)?)?;
    m.add_function(wrap_pyfunction!(compare_all, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(kneser_witness, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
