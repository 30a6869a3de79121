//! Python bindings: series arithmetic, the counterexample triple, the
//! square obstruction and Artin function estimates.

use artin_core::artin::{beta_bruteforce, beta_lower_bound_row, square_obstruction as certify_square, SolutionOracle};
use artin_core::construction::{build_triple as core_build_triple, default_precision, distance_to_root, z_p};
use artin_core::diophantine::sweep;
use artin_core::parse::{infer_unknowns, parse_poly};
use artin_core::{Error, FieldDescriptor, GradedSeries, Order, Precision};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(artin_py, ArtinError, PyValueError);

fn err(e: Error) -> PyErr {
    ArtinError::new_err(e.to_string())
}

fn field_of(name: &str) -> PyResult<FieldDescriptor> {
    name.parse().map_err(err)
}

/// `None` for infinite order or precision.
fn finite(o: Order) -> Option<i64> {
    match o {
        Order::Finite(d) => Some(d),
        Order::Infinite => None,
    }
}

#[pyclass(name = "Series", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(GradedSeries);

#[pymethods]
impl PySeries {
    /// Parses a polynomial in `T1..TN` (no unknowns), e.g. `"T1^2 + T2^3"`.
    #[staticmethod]
    #[pyo3(signature = (text, num_vars = 2, field = "Q"))]
    fn parse(text: &str, num_vars: usize, field: &str) -> PyResult<Self> {
        let sys = parse_poly(text, num_vars, 1, field_of(field)?).map_err(err)?;
        let zero = GradedSeries::zero(sys.field, num_vars);
        Ok(PySeries(sys.polys[0].eval(&[zero]).map_err(err)?))
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.0.num_vars()
    }

    /// `None` for an exact series.
    #[getter]
    fn precision(&self) -> Option<i64> {
        match self.0.precision() {
            Precision::Finite(p) => Some(p),
            Precision::Exact => None,
        }
    }

    /// `None` for the exact zero series.
    fn ord(&self) -> PyResult<Option<i64>> {
        self.0.ord().map(finite).map_err(err)
    }

    fn truncate(&self, precision: i64) -> PyResult<Self> {
        self.0.truncate(precision).map(PySeries).map_err(err)
    }

    fn invert_unit(&self, precision: i64) -> PyResult<Self> {
        self.0.invert_unit(precision).map(PySeries).map_err(err)
    }

    fn __add__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.add(&other.0).map(PySeries).map_err(err)
    }

    fn __sub__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.sub(&other.0).map(PySeries).map_err(err)
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.mul(&other.0).map(PySeries).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PySeries(self.0.neg())
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series('{}')", self.0)
    }
}

/// `z_p = T1^2 + T2^p`.
#[pyfunction]
#[pyo3(signature = (p, field = "Q"))]
fn zp(p: u32, field: &str) -> PyResult<PySeries> {
    Ok(PySeries(z_p(p, field_of(field)?)))
}

/// The triple `(u, v, z)` with predicted and measured orders.
#[pyfunction]
#[pyo3(signature = (p, k, field = "Q", precision = None))]
fn build_triple<'py>(py: Python<'py>, p: u32, k: u32, field: &str, precision: Option<i64>) -> PyResult<Bound<'py, PyDict>> {
    let field = field_of(field)?;
    let precision = precision.unwrap_or_else(|| default_precision(p, k));
    let t = core_build_triple(p, k, field, precision).map_err(err)?;
    let d = distance_to_root(p, k, precision, field).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("u", PySeries(t.u.clone()))?;
    out.set_item("v", PySeries(t.v.clone()))?;
    out.set_item("z", PySeries(t.z.clone()))?;
    out.set_item("ord_p", t.measured_ord_p)?;
    out.set_item("ord_p_predicted", t.predicted_ord_p)?;
    out.set_item("min_uv_ord", t.measured_min_uv_ord)?;
    out.set_item("distance", d.measured)?;
    out.set_item("distance_predicted", d.predicted)?;
    out.set_item("regime", t.regime.label())?;
    out.set_item("factorization_holds", t.factorization_holds().map_err(err)?)?;
    Ok(out)
}

/// `sup_t ord(z_p - t^2)` with the best `t` found.
#[pyfunction]
#[pyo3(signature = (p, field = "Q", max_order = None))]
fn square_obstruction<'py>(py: Python<'py>, p: u32, field: &str, max_order: Option<i64>) -> PyResult<Bound<'py, PyDict>> {
    let c = certify_square(p, field_of(field)?, max_order.unwrap_or(p as i64 + 2)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("max_order", c.max_order)?;
    out.set_item("best_t", PySeries(c.best_t))?;
    out.set_item("obstruction_degree", c.obstruction_degree)?;
    out.set_item("residual", PySeries(c.residual))?;
    Ok(out)
}

/// Rows `(p, k, ord_v, ord_distance, regime)`.
#[pyfunction]
#[pyo3(signature = (ps, ks, field = "Q"))]
fn dioph(ps: Vec<u32>, ks: Vec<u32>, field: &str) -> PyResult<Vec<(u32, u32, i64, i64, &'static str)>> {
    let records = sweep(ps, ks, field_of(field)?).map_err(err)?;
    Ok(records.iter().map(|r| (r.p, r.k, r.ord_v, r.ord_distance, r.regime.label())).collect())
}

/// `(lower bound as a fraction string, certified)` for the Artin function at `i >= 8`.
#[pyfunction]
#[pyo3(signature = (i, field = "Q"))]
fn beta_lower_bound(i: u32, field: &str) -> PyResult<(String, bool)> {
    let row = beta_lower_bound_row(i, field_of(field)?).map_err(err)?;
    Ok((row.lower_bound.to_string(), row.holds()))
}

/// Brute-force Artin function value. `oracle` is one of `horizon`,
/// `origin`, `none` and `square-or-zero`.
#[pyfunction]
#[pyo3(signature = (poly, i, num_series_vars = 1, field = "F3", jet_order = None, oracle = "horizon", budget = 10_000_000))]
#[allow(clippy::too_many_arguments)]
fn artin_estimate<'py>(
    py: Python<'py>,
    poly: &str,
    i: u32,
    num_series_vars: usize,
    field: &str,
    jet_order: Option<u32>,
    oracle: &str,
    budget: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let field = field_of(field)?;
    let n = infer_unknowns(poly, num_series_vars).map_err(err)?;
    let sys = parse_poly(poly, num_series_vars, n, field).map_err(err)?;
    let jet_order = jet_order.unwrap_or(i + 2);
    let oracle = match oracle {
        "horizon" => SolutionOracle::Horizon(jet_order),
        "origin" => SolutionOracle::OriginOnly,
        "none" => SolutionOracle::NoSolutions,
        "square-or-zero" => SolutionOracle::SquareOrZero,
        other => return Err(PyValueError::new_err(format!("unknown oracle `{other}`"))),
    };
    let out = PyDict::new(py);
    out.set_item("system", &sys.source)?;
    out.set_item("i", i)?;
    out.set_item("jet_order", jet_order)?;
    match beta_bruteforce(&sys, i, field, jet_order, jet_order, oracle, budget) {
        Ok(r) => {
            out.set_item("beta_lower", r.beta_lower)?;
            out.set_item("beta_exact", r.beta_exact)?;
            out.set_item("exact_flag", r.exact_flag)?;
            out.set_item("witness", r.witness.map(|w| w.into_iter().map(PySeries).collect::<Vec<_>>()))?;
        }
        Err(Error::NoSuchB { lower_bound, .. }) => {
            out.set_item("beta_lower", lower_bound)?;
            out.set_item("beta_exact", None::<u32>)?;
            out.set_item("exact_flag", false)?;
            out.set_item("witness", None::<Vec<PySeries>>)?;
        }
        Err(e) => return Err(err(e)),
    }
    Ok(out)
}

#[pymodule]
fn artin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ArtinError", m.py().get_type::<ArtinError>())?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(zp, m)?)?;
    m.add_function(wrap_pyfunction!(build_triple, m)?)?;
    m.add_function(wrap_pyfunction!(square_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(dioph, m)?)?;
    m.add_function(wrap_pyfunction!(beta_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(artin_estimate, m)?)?;
    Ok(())
}
