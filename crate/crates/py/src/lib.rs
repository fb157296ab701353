//! Python module `arndt_carlitz`.
//!
//! Counts come back as Python `int`s of any size; high-precision constants
//! come back as decimal strings so no digits are lost to `float`.

use arndt_carlitz::asymptotics::{self, SumCutoff};
use arndt_carlitz::{composition, gf::SeriesBundle, BruteForceLimit, Composition, Error, Parity};
use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyOverflowError, PyValueError};
use pyo3::prelude::*;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => PyOverflowError::new_err(e.to_string()),
        Error::Domain(_)
        | Error::NoSignChange { .. }
        | Error::DegeneratePole
        | Error::Precision(_)
        | Error::NoConvergence { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_parity(s: &str) -> PyResult<Parity> {
    s.parse().map_err(PyValueError::new_err)
}

fn parts_of(parts: Vec<u32>) -> PyResult<Composition> {
    Composition::new(parts).ok_or_else(|| PyValueError::new_err("parts must be positive"))
}

/// An integer composition, stored as its parts.
#[pyclass(name = "Composition", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyComposition(Composition);

#[pymethods]
impl PyComposition {
    #[new]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        parts_of(parts).map(Self)
    }

    /// Parses `"3+1+2+1"`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(PyValueError::new_err)
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn total(&self) -> u64 {
        self.0.total()
    }

    fn is_arndt(&self) -> bool {
        composition::is_arndt(&self.0)
    }

    fn is_carlitz(&self) -> bool {
        composition::is_carlitz(&self.0)
    }

    fn is_arndt_carlitz(&self) -> bool {
        composition::is_arndt_carlitz(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Composition({:?})", self.0.parts())
    }
}

#[pyfunction]
fn is_arndt(parts: Vec<u32>) -> bool {
    composition::is_arndt_parts(&parts)
}

#[pyfunction]
fn is_carlitz(parts: Vec<u32>) -> bool {
    composition::is_carlitz_parts(&parts)
}

#[pyfunction]
fn is_arndt_carlitz(parts: Vec<u32>) -> bool {
    composition::is_arndt_carlitz_parts(&parts)
}

/// Lexicographic listing; raises `OverflowError` above the brute-force cap.
#[pyfunction]
#[pyo3(signature = (n, parity = "all"))]
fn list_compositions(py: Python<'_>, n: usize, parity: &str) -> PyResult<Vec<PyComposition>> {
    let parity = parse_parity(parity)?;
    let found = py
        .detach(|| composition::list_arndt_carlitz(n, parity, BruteForceLimit::from_env()))
        .map_err(to_py_err)?;
    Ok(found.into_iter().map(PyComposition).collect())
}

/// `(even, odd, total)` by exhaustive enumeration.
#[pyfunction]
fn count_brute_force(py: Python<'_>, n: usize) -> PyResult<(u64, u64, u64)> {
    let c = py
        .detach(|| composition::count_brute_force(n, BruteForceLimit::from_env()))
        .map_err(to_py_err)?;
    Ok((c.even, c.odd, c.total))
}

#[pyfunction]
fn brute_force_cap() -> usize {
    BruteForceLimit::from_env().cap
}

/// Exact counting series up to `z^order`.
#[pyclass(name = "SeriesBundle", frozen)]
struct PySeriesBundle(SeriesBundle);

#[pymethods]
impl PySeriesBundle {
    /// `method` is `"gf"` (closed form) or `"slice"` (slice recurrence).
    #[new]
    #[pyo3(signature = (order = arndt_carlitz::DEFAULT_ORDER, method = "gf"))]
    fn new(py: Python<'_>, order: usize, method: &str) -> PyResult<Self> {
        let bundle = match method {
            "gf" => py.detach(|| SeriesBundle::compute(order)),
            "slice" => py.detach(|| SeriesBundle::from_slice_iteration(order)),
            _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
        };
        bundle.map(Self).map_err(to_py_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[pyo3(signature = (parity = "all"))]
    fn counts(&self, parity: &str) -> PyResult<Vec<BigInt>> {
        Ok(self.0.counts(parse_parity(parity)?).to_vec())
    }

    /// Coefficients of `F(z,z)`, the even series with the last part counted twice.
    fn fzz(&self) -> PyResult<Vec<BigInt>> {
        self.0.fzz().to_counts("F(z,z)").map_err(to_py_err)
    }
}

/// Coefficients `0 … order` of the even, odd or total counting series.
#[pyfunction]
#[pyo3(signature = (order = arndt_carlitz::DEFAULT_ORDER, parity = "all"))]
fn series(py: Python<'_>, order: usize, parity: &str) -> PyResult<Vec<BigInt>> {
    let parity = parse_parity(parity)?;
    let bundle = py
        .detach(|| SeriesBundle::compute(order))
        .map_err(to_py_err)?;
    Ok(bundle.counts(parity).to_vec())
}

/// Pole location and amplitudes, each as a decimal string.
#[pyclass(name = "AsymptoticEstimate", frozen, get_all)]
struct PyEstimate {
    rho: String,
    growth: String,
    c_even: String,
    c_odd: String,
    c_total: String,
    digits: usize,
}

#[pymethods]
impl PyEstimate {
    fn __repr__(&self) -> String {
        format!(
            "AsymptoticEstimate(rho={}, growth={}, c_even={}, c_odd={}, c_total={})",
            self.rho, self.growth, self.c_even, self.c_odd, self.c_total
        )
    }
}

fn cutoff(sum_terms: Option<usize>) -> SumCutoff {
    sum_terms.map_or(SumCutoff::Converged, SumCutoff::Terms)
}

#[pyfunction]
#[pyo3(signature = (digits = asymptotics::DEFAULT_DIGITS, sum_terms = None))]
fn find_rho(py: Python<'_>, digits: usize, sum_terms: Option<usize>) -> PyResult<String> {
    let rho = py
        .detach(|| asymptotics::find_rho_with(digits, cutoff(sum_terms)))
        .map_err(to_py_err)?;
    Ok(rho.to_string_digits(digits))
}

/// `sum_terms` cuts every alpha/beta sum after that many terms.
#[pyfunction]
#[pyo3(signature = (digits = asymptotics::DEFAULT_DIGITS, sum_terms = None))]
fn estimate(py: Python<'_>, digits: usize, sum_terms: Option<usize>) -> PyResult<PyEstimate> {
    let est = py
        .detach(|| asymptotics::estimate_with(digits, cutoff(sum_terms)))
        .map_err(to_py_err)?;
    let s = |x: &arndt_carlitz::HighPrecisionReal| x.to_string_digits(digits);
    Ok(PyEstimate {
        rho: s(&est.rho),
        growth: s(&est.growth),
        c_even: s(&est.c_even),
        c_odd: s(&est.c_odd),
        c_total: s(&est.c_total),
        digits,
    })
}

#[pymodule(name = "arndt_carlitz")]
pub fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComposition>()?;
    m.add_class::<PySeriesBundle>()?;
    m.add_class::<PyEstimate>()?;
    m.add_function(wrap_pyfunction!(is_arndt, m)?)?;
    m.add_function(wrap_pyfunction!(is_carlitz, m)?)?;
    m.add_function(wrap_pyfunction!(is_arndt_carlitz, m)?)?;
    m.add_function(wrap_pyfunction!(list_compositions, m)?)?;
    m.add_function(wrap_pyfunction!(count_brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_cap, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(find_rho, m)?)?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add("CAP_ENV_VAR", composition::CAP_ENV_VAR)?;
    Ok(())
}
