use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ncergo::dynamics::{self, ActionSpec, FolnerRegion, GroupKind, RegionShape};
use ncergo::experiments;
use ncergo::group::{self, DualSystemConfig, GroupObservable, Word};
use ncergo::tensor::{self, StateFunctional, StateKind};
use ncergo::{parse_scalar, Monomial, SurdScalar, TensorMonomial};

fn py_err(e: ncergo::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scalar(text: &str) -> PyResult<SurdScalar> {
    parse_scalar(text).map_err(py_err)
}

fn pair(c: Complex64) -> (f64, f64) {
    (c.re, c.im)
}

fn group_kind(name: &str) -> PyResult<GroupKind> {
    match name {
        "Z" => Ok(GroupKind::Z),
        "R" => Ok(GroupKind::R),
        "R2" => Ok(GroupKind::R2),
        _ => Err(PyValueError::new_err(format!("unknown group '{name}'"))),
    }
}

fn region(shape: &str, size: &str) -> PyResult<FolnerRegion> {
    let shape = RegionShape::from_name(shape)
        .ok_or_else(|| PyValueError::new_err(format!("unknown shape '{shape}'")))?;
    let size = scalar(size)?;
    if !size.is_rational() {
        return Err(PyValueError::new_err("region size must be rational"));
    }
    FolnerRegion::from_shape(shape, size.rational_part()).map_err(py_err)
}

/// `(size, value, limit, abs_error)` with complex numbers as `(re, im)`.
type Row = (String, (f64, f64), (f64, f64), f64);

fn rows(rows: Vec<ncergo::ConvergenceRow>) -> Vec<Row> {
    rows.into_iter()
        .map(|r| (r.size.to_string(), pair(r.value), pair(r.limit), r.abs_error))
        .collect()
}

/// Element of the quantum torus; `terms` are `(m, n, re, im)`.
#[pyclass(name = "TorusElement", frozen)]
struct PyTorusElement(ncergo::TorusElement);

#[pymethods]
impl PyTorusElement {
    #[new]
    fn new(theta: &str, terms: Vec<(i64, i64, f64, f64)>) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(m, n, re, im)| (Monomial::new(m, n), Complex64::new(re, im)));
        Ok(Self(ncergo::TorusElement::from_terms(scalar(theta)?, terms)))
    }

    #[staticmethod]
    fn u(theta: &str) -> PyResult<Self> {
        Ok(Self(ncergo::TorusElement::u(scalar(theta)?)))
    }

    #[staticmethod]
    fn v(theta: &str) -> PyResult<Self> {
        Ok(Self(ncergo::TorusElement::v(scalar(theta)?)))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(py_err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(py_err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).map(Self).map_err(py_err)
    }

    fn scale(&self, re: f64, im: f64) -> Self {
        Self(self.0.scale(Complex64::new(re, im)))
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    fn trace(&self) -> (f64, f64) {
        pair(self.0.trace())
    }

    fn one_norm(&self) -> f64 {
        self.0.one_norm()
    }

    fn terms(&self) -> Vec<(i64, i64, f64, f64)> {
        self.0
            .terms()
            .iter()
            .map(|(k, c)| (k.m, k.n, c.re, c.im))
            .collect()
    }

    /// Average over a Følner region of the action with multipliers `(p, q)`.
    #[pyo3(signature = (shape, size, p = "1", q = "1", group = "R2"))]
    fn ergodic_average(&self, shape: &str, size: &str, p: &str, q: &str, group: &str) -> PyResult<Self> {
        let spec = ActionSpec::torus(group_kind(group)?, scalar(p)?, scalar(q)?);
        dynamics::ergodic_average(&self.0, &spec, &region(shape, size)?)
            .map(Self)
            .map_err(py_err)
    }

    #[pyo3(signature = (p = "1", q = "1", group = "R2"))]
    fn conditional_expectation(&self, p: &str, q: &str, group: &str) -> PyResult<Self> {
        let spec = ActionSpec::torus(group_kind(group)?, scalar(p)?, scalar(q)?);
        dynamics::conditional_expectation(&self.0, &spec)
            .map(Self)
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("TorusElement({})", self.0)
    }
}

/// Element of a tensor product of two quantum tori; `terms` are
/// `(j, k, l, m, re, im)` for `u^j v^k ⊗ w^l z^m`.
#[pyclass(name = "TensorElement", frozen)]
struct PyTensorElement(ncergo::TensorElement);

#[pymethods]
impl PyTensorElement {
    #[new]
    fn new(theta1: &str, theta2: &str, terms: Vec<(i64, i64, i64, i64, f64, f64)>) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(j, k, l, m, re, im)| (TensorMonomial::new(j, k, l, m), Complex64::new(re, im)));
        Ok(Self(ncergo::TensorElement::from_terms(
            scalar(theta1)?,
            scalar(theta2)?,
            terms,
        )))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(py_err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(py_err)
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    fn one_norm(&self) -> f64 {
        self.0.one_norm()
    }

    fn terms(&self) -> Vec<(i64, i64, i64, i64, f64, f64)> {
        self.0
            .terms()
            .iter()
            .map(|(t, c)| (t.j, t.k, t.l, t.m, c.re, c.im))
            .collect()
    }

    /// Value of `product_trace`, `kappa_D`, `kappa_diag` or `omega_rel`.
    fn state(&self, kind: &str) -> PyResult<(f64, f64)> {
        let f = functional(kind, &self.0)?;
        tensor::state_eval(&f, &self.0).map(pair).map_err(py_err)
    }

    /// Averaged coupling over regions of growing size, next to the limit joining.
    #[pyo3(signature = (kind, shape, sizes, p = "1", q = "1", c = "1", d = "1", group = "R2"))]
    #[allow(clippy::too_many_arguments)]
    fn disjointness_average(
        &self,
        kind: &str,
        shape: &str,
        sizes: Vec<String>,
        p: &str,
        q: &str,
        c: &str,
        d: &str,
        group: &str,
    ) -> PyResult<Vec<Row>> {
        let f = functional(kind, &self.0)?;
        let spec = ActionSpec::tensor(group_kind(group)?, (scalar(p)?, scalar(q)?), (scalar(c)?, scalar(d)?));
        let regions = sizes
            .iter()
            .map(|s| region(shape, s))
            .collect::<PyResult<Vec<_>>>()?;
        tensor::disjointness_average(&f, &self.0, &spec, &regions)
            .map(rows)
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("TensorElement({} terms)", self.0.len())
    }
}

fn functional(kind: &str, c: &ncergo::TensorElement) -> PyResult<StateFunctional> {
    let kind = StateKind::from_name(kind)
        .ok_or_else(|| PyValueError::new_err(format!("unknown functional '{kind}'")))?;
    StateFunctional::new(kind, c.theta1().clone(), c.theta2().clone()).map_err(py_err)
}

fn observable(words: Vec<(String, f64, f64)>) -> PyResult<GroupObservable> {
    let terms = words
        .into_iter()
        .map(|(w, re, im)| Ok((w.parse::<Word>().map_err(py_err)?, Complex64::new(re, im))))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(GroupObservable::from_terms(terms))
}

/// Correlation averages on the increasing-cycles dual system, next to
/// `μ(D(a) D(b))`; observables are lists of `(word, re, im)`.
#[pyfunction]
#[pyo3(signature = (a, b, sizes, cycle_count = 3))]
fn group_experiment(
    a: Vec<(String, f64, f64)>,
    b: Vec<(String, f64, f64)>,
    sizes: Vec<u64>,
    cycle_count: usize,
) -> PyResult<Vec<Row>> {
    let config = DualSystemConfig::increasing_cycles(cycle_count);
    group::correlation_experiment(&observable(a)?, &observable(b)?, &config, &sizes)
        .map(rows)
        .map_err(py_err)
}

/// Canonical form of a quadratic-surd literal.
#[pyfunction]
fn canonical_scalar(text: &str) -> PyResult<String> {
    Ok(scalar(text)?.to_string())
}

/// Property suites as `(line, passed)` pairs.
#[pyfunction]
#[pyo3(signature = (suite = None, seed = 0))]
fn verify(suite: Option<&str>, seed: u64) -> PyResult<Vec<(String, bool)>> {
    Ok(experiments::verify(suite, seed)
        .map_err(py_err)?
        .into_iter()
        .map(|c| (c.to_string(), c.passed))
        .collect())
}

#[pymodule]
fn ncergo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTorusElement>()?;
    m.add_class::<PyTensorElement>()?;
    m.add_function(wrap_pyfunction!(group_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
