//! Python bindings: graphs, counts, Hilbert series, certified roots and
//! growth bounds. Big integers cross as Python `int`, rationals as
//! `fractions.Fraction`.

use artin_growth::census::{self, Method};
use artin_growth::charpoly;
use artin_growth::coxeter::{build_family, CoxeterGraph, Family};
use artin_growth::hilbert::{self, RationalSeries};
use artin_growth::spectra::{self, default_width, RootCertificate};
use artin_growth::{verify, Error, IntPolynomial};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::GuardExceeded { .. } | Error::CeilingExceeded { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// A Coxeter graph, optionally tagged with the named family it was built from.
#[pyclass(frozen, skip_from_py_object, name = "Graph", module = "artin_growth")]
#[derive(Clone)]
struct PyGraph {
    graph: CoxeterGraph,
    family: Option<Family>,
}

#[pymethods]
impl PyGraph {
    /// Named family such as `("Kinf", 4)`, `("E", 8)` or `("I2", None, 5)`.
    #[staticmethod]
    #[pyo3(signature = (name, rank=None, p=None))]
    fn family(name: &str, rank: Option<usize>, p: Option<u32>) -> PyResult<Self> {
        let family = Family::from_parts(name, rank, p).map_err(err)?;
        Ok(PyGraph {
            graph: build_family(family).map_err(err)?,
            family: Some(family),
        })
    }

    /// Parses the edge-list text format (`n`, then `i j label` lines).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            graph: CoxeterGraph::from_text(text).map_err(err)?,
            family: None,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.graph.rank()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.family.map(|f| f.to_string())
    }

    /// Label between generators `i` and `j` (1-based) as text: `"2"`, `"3"`, `"inf"`.
    fn label(&self, i: usize, j: usize) -> PyResult<String> {
        let n = self.graph.rank();
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(PyValueError::new_err(format!(
                "need distinct generators in 1..={n}"
            )));
        }
        Ok(self.graph.label(i - 1, j - 1).to_string())
    }

    fn commutes(&self, i: usize, j: usize) -> PyResult<bool> {
        Ok(self.label(i, j)? == "2")
    }

    fn is_right_angled(&self) -> bool {
        self.graph.is_right_angled()
    }

    /// Same commutations, every other label replaced by `inf`.
    fn right_angled(&self) -> Self {
        PyGraph {
            graph: self.graph.right_angled(),
            family: None,
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        self.graph
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| v + 1).collect())
            .collect()
    }

    fn to_text(&self) -> String {
        self.graph.to_text()
    }

    fn __repr__(&self) -> String {
        match self.family {
            Some(f) => format!("Graph.family({f})"),
            None => format!("Graph(rank={})", self.graph.rank()),
        }
    }
}

/// Integer polynomial, coefficients in ascending degree.
#[pyclass(
    frozen,
    eq,
    skip_from_py_object,
    name = "Polynomial",
    module = "artin_growth"
)]
#[derive(Clone, PartialEq)]
struct PyPolynomial(IntPolynomial);

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(coeffs: Vec<BigInt>) -> Self {
        PyPolynomial(IntPolynomial::new(coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn __call__(&self, x: BigRational) -> BigRational {
        self.0.eval(&x)
    }

    fn reciprocal(&self) -> Self {
        PyPolynomial(self.0.reciprocal())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.0)
    }
}

/// Sturm certificate for the real roots of a polynomial.
#[pyclass(frozen, name = "RootCertificate", module = "artin_growth")]
struct PyRootCertificate(RootCertificate);

#[pymethods]
impl PyRootCertificate {
    #[getter]
    fn polynomial(&self) -> PyPolynomial {
        PyPolynomial(self.0.polynomial.clone())
    }

    #[getter]
    fn zero_multiplicity(&self) -> usize {
        self.0.zero_multiplicity
    }

    /// `(lo, hi)` pairs, one real root each.
    #[getter]
    fn intervals(&self) -> Vec<(BigRational, BigRational)> {
        self.0
            .intervals
            .iter()
            .map(|iv| (iv.lo.clone(), iv.hi.clone()))
            .collect()
    }

    #[getter]
    fn uncertified_count(&self) -> usize {
        self.0.uncertified_count
    }

    /// Rechecks every interval independently of the isolation run.
    fn verify(&self) -> bool {
        self.0.verify()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(json_err)
    }
}

fn width_or_default(width: Option<BigRational>) -> PyResult<BigRational> {
    match width {
        Some(w) if w <= BigRational::from_integer(0.into()) => {
            Err(PyValueError::new_err("width must be positive"))
        }
        Some(w) => Ok(w),
        None => Ok(default_width()),
    }
}

/// Word counts `c_0..=c_max_k`. `method` is one of auto, recurrence,
/// canonical, brute.
#[pyfunction]
#[pyo3(signature = (graph, max_k, method="auto", guard=census::DEFAULT_GUARD))]
fn count(
    py: Python<'_>,
    graph: &PyGraph,
    max_k: usize,
    method: &str,
    guard: u64,
) -> PyResult<Vec<BigUint>> {
    let method = match method {
        "auto" => Method::Auto,
        "recurrence" => Method::Recurrence,
        "canonical" => Method::Canonical,
        "brute" => Method::Brute,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    let table = py
        .detach(|| census::count_graph(graph.family, &graph.graph, max_k, method, guard))
        .map_err(err)?;
    Ok(table.totals)
}

/// Coefficients of `1 / reciprocal(p)`, the Hilbert series whose transfer
/// matrix has characteristic polynomial `p`.
#[pyfunction]
fn series(p: &PyPolynomial, max_k: usize) -> PyResult<Vec<BigInt>> {
    hilbert::series_from_charpoly(&p.0)
        .and_then(|s| s.coefficients(max_k))
        .map_err(err)
}

/// Coefficients of `numerator / denominator` as a power series.
#[pyfunction]
fn rational_series(
    numerator: &PyPolynomial,
    denominator: &PyPolynomial,
    max_k: usize,
) -> PyResult<Vec<BigInt>> {
    RationalSeries::new(numerator.0.clone(), denominator.0.clone())
        .and_then(|s| s.coefficients(max_k))
        .map_err(err)
}

/// Alternating clique polynomial of the commuting graph; its inverse is the
/// Hilbert series of the right-angled monoid.
#[pyfunction]
fn mobius_denominator(graph: &PyGraph) -> PyResult<PyPolynomial> {
    hilbert::mobius_denominator(&graph.graph.right_angled())
        .map(PyPolynomial)
        .map_err(err)
}

/// Characteristic polynomial of a named ladder: `K`, `A`, `D`, `E`, or the
/// reduced forms `Kred`, `Ared`, `Dred`.
#[pyfunction(name = "charpoly")]
fn ladder_charpoly(name: &str, n: usize) -> PyResult<PyPolynomial> {
    let p = match name {
        "K" => Ok(charpoly::k_script(n)),
        "A" => Ok(charpoly::a_script(n)),
        "D" => charpoly::d_script(n),
        "E" => charpoly::e_script(n),
        "Kred" => Ok(charpoly::k_reduced(n)),
        "Ared" => charpoly::a_reduced(n as i64),
        "Dred" => charpoly::d_reduced(n),
        other => return Err(PyValueError::new_err(format!("unknown ladder {other:?}"))),
    };
    p.map(PyPolynomial).map_err(err)
}

/// Isolates every nonzero real root to the given width (default `2^-40`).
#[pyfunction]
#[pyo3(signature = (p, width=None))]
fn isolate(
    py: Python<'_>,
    p: &PyPolynomial,
    width: Option<BigRational>,
) -> PyResult<PyRootCertificate> {
    let width = width_or_default(width)?;
    py.detach(|| spectra::isolate_all(&p.0, &width))
        .map(PyRootCertificate)
        .map_err(err)
}

/// Certified rational upper bound below 4 on the growth rate, with the JSON
/// certificate. Raises `ValueError` if no route certifies a bound below 4.
#[pyfunction]
fn growth_bound(py: Python<'_>, graph: &PyGraph) -> PyResult<(BigRational, String)> {
    let g = py
        .detach(|| match graph.family {
            Some(f) => spectra::growth_bound(f),
            None => spectra::growth_bound_graph(&graph.graph),
        })
        .map_err(err)?;
    let json = serde_json::to_string(&g).map_err(json_err)?;
    Ok((g.bound, json))
}

/// Runs the identity battery; `(name, passed, detail)` per check.
#[pyfunction]
#[pyo3(signature = (max_n=12))]
fn verify_battery(py: Python<'_>, max_n: usize) -> PyResult<Vec<(String, bool, String)>> {
    if max_n < 8 {
        return Err(PyValueError::new_err("max_n must be at least 8"));
    }
    let checks = py.detach(|| verify::run_battery(max_n));
    Ok(checks
        .into_iter()
        .map(|c| (c.name.to_string(), c.passed, c.detail))
        .collect())
}

#[pymodule(name = "artin_growth")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyRootCertificate>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(rational_series, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_denominator, m)?)?;
    m.add_function(wrap_pyfunction!(ladder_charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(isolate, m)?)?;
    m.add_function(wrap_pyfunction!(growth_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verify_battery, m)?)?;
    m.add("DEFAULT_GUARD", census::DEFAULT_GUARD)?;
    Ok(())
}
