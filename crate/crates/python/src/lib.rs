//! Python bindings. Exact rationals cross the boundary as strings such as
//! `"3/2"`; integers are also accepted on input.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use toda::forbidden::{self, ForbiddenOptions};
use toda::gamma;
use toda::liouville::{self, DichotomyCase};
use toda::mass::{self, format_rational, parse_rational, CartanMatrix, Rational};
use toda::pohozaev::{self, Component};
use toda::rigidity::{self, MKInput, QVector};

create_exception!(
    toda_mass,
    TodaMassError,
    PyValueError,
    "Domain error raised by toda_mass."
);

/// Messages read `Kind: detail`.
fn err(e: impl Into<toda::Error>) -> PyErr {
    TodaMassError::new_err(e.into().to_string())
}

fn algebra(name: &str) -> PyResult<CartanMatrix> {
    name.parse().map_err(err)
}

fn component(i: u8) -> PyResult<Component> {
    Component::from_index(i)
        .ok_or_else(|| PyValueError::new_err(format!("component must be 1 or 2, got {i}")))
}

/// Accepts `int` or `str` (e.g. `"3/2"`, `"-2"`).
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(mass::rat(n));
    }
    let text: String = obj.str()?.extract()?;
    parse_rational(&text).map_err(err)
}

/// Affine expression `c1*mu1 + c2*mu2 + c0` with rational coefficients.
#[pyclass(name = "MassExpr", module = "toda_mass", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMassExpr(mass::MassExpr);

#[pymethods]
impl PyMassExpr {
    /// Parses text such as `"2*mu1 + mu2 - 1/2"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyMassExpr).map_err(err)
    }

    #[staticmethod]
    fn from_coeffs(
        c1: &Bound<'_, PyAny>,
        c2: &Bound<'_, PyAny>,
        c0: &Bound<'_, PyAny>,
    ) -> PyResult<Self> {
        Ok(PyMassExpr(mass::MassExpr::new(
            rational(c1)?,
            rational(c2)?,
            rational(c0)?,
        )))
    }

    /// `(c1, c2, c0)` as strings.
    #[getter]
    fn coeffs(&self) -> (String, String, String) {
        (
            format_rational(self.0.c1()),
            format_rational(self.0.c2()),
            format_rational(self.0.c0()),
        )
    }

    /// Exact value at `(mu1, mu2)`.
    fn eval(&self, mu1: &Bound<'_, PyAny>, mu2: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(format_rational(&mass::mass_eval(
            &self.0,
            &rational(mu1)?,
            &rational(mu2)?,
        )))
    }

    fn eval_float(&self, mu1: f64, mu2: f64) -> f64 {
        self.0.eval_f64(mu1, mu2)
    }

    /// The same expression rebuilt from its witness `2(n1*mu1 + n2*mu2 + n3)`;
    /// raises `NotOfForm` when no integer witness exists.
    fn certificate(&self) -> PyResult<String> {
        mass::integer_form_certificate(&self.0)
            .map(|c| c.to_expr().to_string())
            .map_err(err)
    }

    fn __add__(&self, other: &PyMassExpr) -> PyMassExpr {
        PyMassExpr(mass::mass_add(&self.0, &other.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MassExpr('{}')", self.0)
    }
}

/// Local-mass pair `(sigma1, sigma2)`.
#[pyclass(name = "MassPair", module = "toda_mass", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMassPair(pohozaev::MassPair);

#[pymethods]
impl PyMassPair {
    #[new]
    fn new(s1: &Bound<'_, PyAny>, s2: &Bound<'_, PyAny>) -> PyResult<Self> {
        let expr = |obj: &Bound<'_, PyAny>| -> PyResult<mass::MassExpr> {
            match obj.extract::<PyMassExpr>() {
                Ok(e) => Ok(e.0),
                Err(_) => PyMassExpr::new(&obj.str()?.extract::<String>()?).map(|e| e.0),
            }
        };
        Ok(PyMassPair(pohozaev::MassPair::new(expr(s1)?, expr(s2)?)))
    }

    #[getter]
    fn s1(&self) -> PyMassExpr {
        PyMassExpr(self.0.s1.clone())
    }

    #[getter]
    fn s2(&self) -> PyMassExpr {
        PyMassExpr(self.0.s2.clone())
    }

    /// Exact `(sigma1, sigma2)` at `(mu1, mu2)`.
    fn eval(&self, mu1: &Bound<'_, PyAny>, mu2: &Bound<'_, PyAny>) -> PyResult<(String, String)> {
        let (a, b) = self.0.eval(&rational(mu1)?, &rational(mu2)?);
        Ok((format_rational(&a), format_rational(&b)))
    }

    /// The Pohozaev residual as a polynomial in `mu1, mu2`.
    fn residual(&self, algebra_name: &str) -> PyResult<String> {
        Ok(pohozaev::pi_residual(&self.0, algebra(algebra_name)?).to_string())
    }

    fn satisfies_pohozaev(&self, algebra_name: &str) -> PyResult<bool> {
        Ok(pohozaev::satisfies_pohozaev(
            &self.0,
            algebra(algebra_name)?,
        ))
    }

    fn reflect(&self, algebra_name: &str, component_index: u8) -> PyResult<PyMassPair> {
        Ok(PyMassPair(pohozaev::reflect(
            &self.0,
            algebra(algebra_name)?,
            component(component_index)?,
        )))
    }

    fn is_special(&self, algebra_name: &str) -> PyResult<bool> {
        Ok(gamma::is_special(&self.0, algebra(algebra_name)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MassPair('{}', '{}')", self.0.s1, self.0.s2)
    }
}

/// The admissible local-mass pairs of an algebra (`"A2"`, `"B2"`, `"G2"`).
#[pyfunction]
fn enumerate_gamma(algebra_name: &str) -> PyResult<Vec<PyMassPair>> {
    let set = gamma::enumerate_gamma(algebra(algebra_name)?).map_err(err)?;
    Ok(set.iter().cloned().map(PyMassPair).collect())
}

#[pyfunction]
fn special_pair(algebra_name: &str) -> PyResult<PyMassPair> {
    Ok(PyMassPair(gamma::special_pair(algebra(algebra_name)?)))
}

/// Unordered pairs `(a, b)` of admissible pairs with `a + b = pair` at `(mu1, mu2)`.
#[pyfunction]
fn decompositions(
    pair: &PyMassPair,
    algebra_name: &str,
    mu1: &Bound<'_, PyAny>,
    mu2: &Bound<'_, PyAny>,
) -> PyResult<Vec<(PyMassPair, PyMassPair)>> {
    let found = gamma::decompositions(
        &pair.0,
        algebra(algebra_name)?,
        &rational(mu1)?,
        &rational(mu2)?,
    )
    .map_err(err)?;
    Ok(found
        .into_iter()
        .map(|d| (PyMassPair(d.first), PyMassPair(d.second)))
        .collect())
}

/// `(entries, determinant)` of `M_K` for the tuple `(l11, l12, l21, l22)`.
#[pyfunction]
fn mk_matrix(algebra_name: &str, tuple: (i64, i64, i64, i64)) -> PyResult<([[i64; 2]; 2], i64)> {
    let (l11, l12, l21, l22) = tuple;
    let m = rigidity::mk_matrix(&MKInput::new(l11, l12, l21, l22), algebra(algebra_name)?);
    Ok((m.entries, m.determinant()))
}

/// Determinants of `M_K` over the admissible set; raises if one vanishes.
#[pyfunction]
fn mk_certificate(algebra_name: &str) -> PyResult<Vec<i64>> {
    let rows = rigidity::mk_nonsingular_certificate(algebra(algebra_name)?).map_err(err)?;
    Ok(rows.iter().map(|r| r.determinant).collect())
}

/// Whether `1, alpha1, alpha2` are linearly independent over Q. Both are
/// given by coordinates in `basis`, whose first element must be `"1"`.
#[pyfunction]
fn q_condition(
    basis: Vec<String>,
    alpha1: &Bound<'_, PyList>,
    alpha2: &Bound<'_, PyList>,
) -> PyResult<bool> {
    let coords =
        |l: &Bound<'_, PyList>| l.iter().map(|x| rational(&x)).collect::<PyResult<Vec<_>>>();
    let a = QVector::new(basis.clone(), coords(alpha1)?).map_err(err)?;
    let b = QVector::new(basis, coords(alpha2)?).map_err(err)?;
    rigidity::q_condition(&a, &b).map_err(err)
}

/// Vortex strengths on an algebra, built from the JSON configuration format.
#[pyclass(name = "VortexConfig", module = "toda_mass", frozen)]
struct PyVortexConfig(forbidden::VortexConfig);

#[pymethods]
impl PyVortexConfig {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        forbidden::VortexConfig::from_json(text)
            .map(PyVortexConfig)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[getter]
    fn algebra(&self) -> &'static str {
        self.0.algebra.label()
    }

    fn __len__(&self) -> usize {
        self.0.vortices.len()
    }

    /// Forbidden values `<= cutoff` for a component, as a list of
    /// `(value, value / 4pi exactly or None, realizations)`.
    #[pyo3(signature = (component_index, cutoff, max_vortices=None))]
    fn forbidden_set(
        &self,
        component_index: u8,
        cutoff: f64,
        max_vortices: Option<usize>,
    ) -> PyResult<Vec<(f64, Option<String>, u64)>> {
        let mut options = ForbiddenOptions::default();
        if let Some(v) = max_vortices {
            options.max_vortices = v;
        }
        let set = forbidden::gamma_i_with(&self.0, component(component_index)?, cutoff, options)
            .map_err(err)?;
        Ok(set
            .values
            .iter()
            .map(|v| {
                (
                    v.value,
                    v.exact_over_4pi.as_ref().map(format_rational),
                    v.realizations,
                )
            })
            .collect())
    }

    /// Compactness verdict for the parameters `(rho1, rho2)`.
    #[pyo3(signature = (rho1, rho2, tol=1e-6))]
    fn check_compactness<'py>(
        &self,
        py: Python<'py>,
        rho1: f64,
        rho2: f64,
        tol: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let v = forbidden::check_compactness(&self.0, rho1, rho2, tol).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("compact_criterion_met", v.compact_criterion_met)?;
        out.set_item("regime", format!("{:?}", v.regime))?;
        let nearest: Vec<Option<(f64, f64)>> = v
            .nearest_forbidden
            .iter()
            .map(|n| n.map(|n| (n.value, n.distance)))
            .collect();
        out.set_item("nearest_forbidden", nearest)?;
        Ok(out)
    }
}

/// Rational map `N / D` with coefficients in ascending order.
#[pyclass(name = "RationalMap", module = "toda_mass", frozen)]
struct PyRationalMap(liouville::RationalMap);

#[pymethods]
impl PyRationalMap {
    #[new]
    #[pyo3(signature = (num, den=vec![Complex64::new(1.0, 0.0)]))]
    fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> PyResult<Self> {
        liouville::RationalMap::new(&num, &den)
            .map(PyRationalMap)
            .map_err(err)
    }

    /// Reduced numerator coefficients, ascending.
    #[getter]
    fn numerator(&self) -> Vec<Complex64> {
        self.0.numerator()
    }

    #[getter]
    fn denominator(&self) -> Vec<Complex64> {
        self.0.denominator()
    }

    #[getter]
    fn degree(&self) -> usize {
        liouville::degree(&self.0)
    }

    fn wronskian(&self) -> Vec<Complex64> {
        self.0.wronskian()
    }

    fn inverse(&self) -> PyRationalMap {
        PyRationalMap(self.0.inverse())
    }

    /// `f(z)`, or `None` at a pole.
    fn __call__(&self, z: Complex64) -> Option<Complex64> {
        self.0.eval(z)
    }

    /// `e^u = 8 |f'|^2 / (1 + |f|^2)^2` at `z`.
    fn density(&self, z: Complex64) -> PyResult<f64> {
        liouville::u_density(&self.0, z).map_err(err)
    }

    /// `(mass, error_estimate, cells)` of the integral of `e^u` over the plane.
    #[pyo3(signature = (rel_tol=liouville::DEFAULT_REL_TOL))]
    fn total_mass(&self, rel_tol: f64) -> PyResult<(f64, f64, usize)> {
        let e = liouville::total_mass(&self.0, rel_tol).map_err(err)?;
        Ok((e.mass, e.error_estimate, e.cells))
    }

    /// `(mass / 4pi, is_even_integer)`.
    #[pyo3(signature = (rel_tol=liouville::DEFAULT_REL_TOL))]
    fn mass_quantization(&self, rel_tol: f64) -> PyResult<(f64, bool)> {
        let q = liouville::mass_quantization_check(&self.0, rel_tol).map_err(err)?;
        Ok((q.m, q.is_even_integer))
    }

    /// Branch points with their orders, the order at infinity and the
    /// measured far-field log slope.
    #[pyo3(signature = (cluster_tol=liouville::DEFAULT_CLUSTER_TOL))]
    fn ramification<'py>(&self, py: Python<'py>, cluster_tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = liouville::ramification(&self.0, cluster_tol).map_err(err)?;
        let out = PyDict::new(py);
        let points: Vec<(Complex64, usize)> = r
            .finite_points
            .iter()
            .map(|v| (v.location, v.alpha))
            .collect();
        out.set_item("finite_points", points)?;
        out.set_item("alpha_infinity", r.alpha_infinity)?;
        out.set_item("boundary_log_slope", r.boundary_log_slope)?;
        out.set_item("slope_radius", r.slope_radius)?;
        out.set_item("multiplicity_at_infinity", r.multiplicity_at_infinity)?;
        out.set_item("riemann_hurwitz_total", r.riemann_hurwitz_total())?;
        Ok(out)
    }

    fn schwarzian(&self, z: Complex64) -> Complex64 {
        liouville::schwarzian(&self.0, z)
    }

    /// `lim (z - p)^2 {f; z}`, equal to `-alpha (alpha + 2) / 2` at a branch point of order `alpha`.
    fn schwarzian_pole_coefficient(&self, p: Complex64) -> PyResult<Complex64> {
        liouville::schwarzian_pole_coefficient(&self.0, p).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalMap({})", self.0)
    }
}

/// Classifies a normalized mass `m` as `(case, k, k1)`.
#[pyfunction]
#[pyo3(signature = (alpha0, integer_alphas, m, tol=1e-6))]
fn mass_dichotomy_classify(
    alpha0: f64,
    integer_alphas: Vec<i64>,
    m: f64,
    tol: f64,
) -> PyResult<(&'static str, Option<i64>, Option<i64>)> {
    let v = liouville::mass_dichotomy_classify(alpha0, &integer_alphas, m, tol).map_err(err)?;
    let case = match v.case {
        DichotomyCase::NonIntegerBranch => "NonIntegerBranch",
        DichotomyCase::IntegerBranch => "IntegerBranch",
        DichotomyCase::Both => "Both",
        DichotomyCase::Neither => "Neither",
    };
    Ok((case, v.k, v.k1))
}

#[pymodule]
fn toda_mass(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TodaMassError", m.py().get_type::<TodaMassError>())?;
    m.add_class::<PyMassExpr>()?;
    m.add_class::<PyMassPair>()?;
    m.add_class::<PyVortexConfig>()?;
    m.add_class::<PyRationalMap>()?;
    m.add_function(wrap_pyfunction!(enumerate_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(special_pair, m)?)?;
    m.add_function(wrap_pyfunction!(decompositions, m)?)?;
    m.add_function(wrap_pyfunction!(mk_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(mk_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(q_condition, m)?)?;
    m.add_function(wrap_pyfunction!(mass_dichotomy_classify, m)?)?;
    Ok(())
}
