//! Python bindings: special functions, Laguerre evaluation and asymptotic
//! models, norm quadrature and asymptotics, entropic quantities and the
//! acceptance suite.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use rydberg_renyi::acceptance::{run_criterion, VerifyOptions, CRITERIA};
use rydberg_renyi::constants;
use rydberg_renyi::entropy::{self, EntropyResult, Method, OscillatorState};
use rydberg_renyi::laguerre::{self, LaguerreParams, ZoneConfig};
use rydberg_renyi::norms::{self, AsymptoticNorm, NormSpec, PowerBase, QuadratureResult, Regime};
use rydberg_renyi::{special, Accuracy, Error};

create_exception!(
    rydberg_renyi_py,
    RydbergRenyiError,
    PyException,
    "Base class of all library errors."
);
create_exception!(rydberg_renyi_py, DomainError, RydbergRenyiError);
create_exception!(rydberg_renyi_py, PoleError, RydbergRenyiError);
create_exception!(rydberg_renyi_py, DivergenceError, RydbergRenyiError);
create_exception!(rydberg_renyi_py, ToleranceError, RydbergRenyiError);
create_exception!(rydberg_renyi_py, OverflowError, RydbergRenyiError);

fn raise(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Domain(_) => DomainError::new_err(msg),
        Error::Pole { .. } => PoleError::new_err(msg),
        Error::Divergence { .. } => DivergenceError::new_err(msg),
        Error::Tolerance { .. } => ToleranceError::new_err(msg),
        Error::Overflow(_) => OverflowError::new_err(msg),
    }
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for rydberg_renyi::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(raise)
    }
}

fn parse_method(method: &str) -> PyResult<Method> {
    match method {
        "exact" => Ok(Method::Exact),
        "asymptotic" => Ok(Method::Asymptotic),
        "auto" => Ok(Method::Auto),
        other => Err(PyValueError::new_err(format!(
            "method must be 'exact', 'asymptotic' or 'auto', got {other:?}"
        ))),
    }
}

fn accuracy_or_default(acc: Option<PyAccuracy>) -> Accuracy {
    acc.map_or_else(Accuracy::default, |a| a.0)
}

fn zones_or_default(zones: Option<PyZoneConfig>) -> ZoneConfig {
    zones.map_or_else(ZoneConfig::default, |z| z.0)
}

#[pyclass(frozen, from_py_object, name = "Accuracy")]
#[derive(Clone)]
struct PyAccuracy(Accuracy);

#[pymethods]
impl PyAccuracy {
    #[new]
    #[pyo3(signature = (abs_tol = 1e-12, rel_tol = 1e-10))]
    fn new(abs_tol: f64, rel_tol: f64) -> PyResult<Self> {
        Accuracy::new(abs_tol, rel_tol).map(PyAccuracy).or_raise()
    }

    #[getter]
    fn abs_tol(&self) -> f64 {
        self.0.abs_tol
    }

    #[getter]
    fn rel_tol(&self) -> f64 {
        self.0.rel_tol
    }

    /// Absolute error target for a value of this magnitude.
    fn target(&self, magnitude: f64) -> f64 {
        self.0.target(magnitude)
    }

    fn __repr__(&self) -> String {
        format!("Accuracy(abs_tol={:e}, rel_tol={:e})", self.0.abs_tol, self.0.rel_tol)
    }
}

#[pyclass(frozen, from_py_object, name = "ZoneConfig")]
#[derive(Clone)]
struct PyZoneConfig(ZoneConfig);

#[pymethods]
impl PyZoneConfig {
    #[new]
    #[pyo3(signature = (theta = 0.1, epsilon = 0.05, t_max = 12.0, hilb_c = 1.0, hilb_cap = 1.0))]
    fn new(theta: f64, epsilon: f64, t_max: f64, hilb_c: f64, hilb_cap: f64) -> PyResult<Self> {
        let zones = ZoneConfig {
            theta,
            epsilon,
            t_max,
            hilb_c,
            hilb_cap,
        };
        zones.validate().or_raise()?;
        Ok(PyZoneConfig(zones))
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.0.epsilon
    }

    #[getter]
    fn t_max(&self) -> f64 {
        self.0.t_max
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Degree and parameter of L_n^(alpha), with the recurrence evaluator and
/// the large-degree models.
#[pyclass(frozen, from_py_object, name = "LaguerreParams")]
#[derive(Clone)]
struct PyLaguerreParams(LaguerreParams);

#[pymethods]
impl PyLaguerreParams {
    #[new]
    fn new(n: usize, alpha: f64) -> PyResult<Self> {
        LaguerreParams::new(n, alpha).map(PyLaguerreParams).or_raise()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    /// n + (alpha + 1)/2.
    #[getter]
    fn big_n(&self) -> f64 {
        self.0.big_n()
    }

    #[getter]
    fn soft_edge(&self) -> f64 {
        self.0.soft_edge()
    }

    #[getter]
    fn edge_width(&self) -> f64 {
        self.0.edge_width()
    }

    fn edge_variable(&self, x: f64) -> f64 {
        self.0.edge_variable(x)
    }

    /// sqrt(x^alpha e^-x) times the orthonormal polynomial at x.
    fn weighted(&self, x: f64) -> PyResult<f64> {
        Ok(laguerre::orthonormal_weighted(&self.0, x).or_raise()?.to_f64())
    }

    /// ln |weighted(x)|, finite where weighted(x) underflows.
    fn ln_abs_weighted(&self, x: f64) -> PyResult<f64> {
        Ok(laguerre::orthonormal_weighted(&self.0, x).or_raise()?.ln_abs())
    }

    fn zeros(&self, py: Python<'_>) -> Vec<f64> {
        let params = self.0;
        py.detach(move || laguerre::locate_zeros(&params))
    }

    #[pyo3(signature = (x, zones = None))]
    fn hilb(&self, x: f64, zones: Option<PyZoneConfig>) -> PyResult<f64> {
        laguerre::hilb_eval(&self.0, &zones_or_default(zones), x).or_raise()
    }

    /// Model of the squared weighted value in the oscillatory zone.
    #[pyo3(signature = (x, zones = None))]
    fn oscillatory_squared(&self, x: f64, zones: Option<PyZoneConfig>) -> PyResult<f64> {
        laguerre::pr_oscillatory_eval(&self.0, &zones_or_default(zones), x).or_raise()
    }

    #[pyo3(signature = (x, zones = None))]
    fn airy(&self, x: f64, zones: Option<PyZoneConfig>) -> PyResult<f64> {
        laguerre::pr_airy_eval(&self.0, &zones_or_default(zones), x).or_raise()
    }

    #[pyo3(signature = (x, zones = None))]
    fn growing(&self, x: f64, zones: Option<PyZoneConfig>) -> PyResult<f64> {
        laguerre::pr_growing_eval(&self.0, &zones_or_default(zones), x).or_raise()
    }

    fn __repr__(&self) -> String {
        format!("LaguerreParams(n={}, alpha={})", self.0.n(), self.0.alpha())
    }
}

#[pyclass(frozen, name = "Regime")]
struct PyRegime(Regime);

#[pymethods]
impl PyRegime {
    #[getter]
    fn branch(&self) -> &'static str {
        self.0.branch.as_str()
    }

    #[getter]
    fn p_star(&self) -> f64 {
        self.0.p_star
    }

    #[getter]
    fn p_tilde(&self) -> Option<f64> {
        self.0.p_tilde
    }

    #[getter]
    fn exponent(&self) -> f64 {
        self.0.exponent
    }

    /// The power law is in (base_factor * n).
    #[getter]
    fn base_factor(&self) -> f64 {
        match self.0.base {
            PowerBase::N => 1.0,
            PowerBase::TwoN => 2.0,
            PowerBase::FourN => 4.0,
        }
    }

    #[getter]
    fn has_log(&self) -> bool {
        self.0.has_log
    }

    fn __repr__(&self) -> String {
        format!(
            "Regime(branch={:?}, exponent={})",
            self.0.branch.as_str(),
            self.0.exponent
        )
    }
}

#[pyclass(frozen, name = "QuadratureResult")]
struct PyQuadratureResult(QuadratureResult);

#[pymethods]
impl PyQuadratureResult {
    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    #[getter]
    fn abs_error_estimate(&self) -> f64 {
        self.0.abs_error_estimate
    }

    #[getter]
    fn panels_used(&self) -> usize {
        self.0.panels_used
    }

    #[getter]
    fn certified(&self) -> bool {
        self.0.certified
    }

    fn __repr__(&self) -> String {
        format!(
            "QuadratureResult(value={}, abs_error_estimate={:e}, certified={})",
            self.0.value, self.0.abs_error_estimate, self.0.certified
        )
    }
}

#[pyclass(frozen, name = "AsymptoticNorm")]
struct PyAsymptoticNorm(AsymptoticNorm);

#[pymethods]
impl PyAsymptoticNorm {
    #[getter]
    fn regime(&self) -> PyRegime {
        PyRegime(self.0.regime)
    }

    #[getter]
    fn coefficient(&self) -> f64 {
        self.0.coefficient
    }

    #[getter]
    fn exponent(&self) -> f64 {
        self.0.exponent
    }

    #[getter]
    fn has_log(&self) -> bool {
        self.0.has_log
    }

    #[getter]
    fn caveat(&self) -> &'static str {
        self.0.caveat.as_str()
    }

    /// Leading-order value at degree n.
    fn model(&self, n: f64) -> f64 {
        self.0.model(n)
    }

    fn compensated(&self, n: f64, exact: f64) -> f64 {
        self.0.compensated(n, exact)
    }
}

/// The norm integral N_{n,l}(D, p).
#[pyclass(frozen, from_py_object, name = "NormSpec")]
#[derive(Clone)]
struct PyNormSpec(NormSpec);

#[pymethods]
impl PyNormSpec {
    #[new]
    fn new(n: usize, l: usize, dim: f64, p: f64) -> PyResult<Self> {
        norms::make_spec(n, l, dim, p).map(PyNormSpec).or_raise()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn l(&self) -> usize {
        self.0.l
    }

    #[getter]
    fn dim(&self) -> f64 {
        self.0.dim
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta
    }

    fn regime(&self) -> PyRegime {
        PyRegime(norms::classify(&self.0))
    }

    /// Certified quadrature; raises ToleranceError when the target is missed.
    #[pyo3(signature = (accuracy = None))]
    fn exact(&self, py: Python<'_>, accuracy: Option<PyAccuracy>) -> PyResult<PyQuadratureResult> {
        let (spec, acc) = (self.0, accuracy_or_default(accuracy));
        py.detach(move || norms::norm_exact(&spec, &acc))
            .map(PyQuadratureResult)
            .or_raise()
    }

    #[pyo3(signature = (accuracy = None))]
    fn asymptotic(&self, py: Python<'_>, accuracy: Option<PyAccuracy>) -> PyResult<PyAsymptoticNorm> {
        let (spec, acc) = (self.0, accuracy_or_default(accuracy));
        py.detach(move || norms::norm_asymptotic(&spec, &acc))
            .map(PyAsymptoticNorm)
            .or_raise()
    }

    fn __repr__(&self) -> String {
        let s = &self.0;
        format!("NormSpec(n={}, l={}, dim={}, p={})", s.n, s.l, s.dim, s.p)
    }
}

#[pyclass(frozen, name = "EntropyResult")]
struct PyEntropyResult(EntropyResult);

#[pymethods]
impl PyEntropyResult {
    #[getter]
    fn quantity(&self) -> &'static str {
        self.0.quantity.as_str()
    }

    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    /// "exact" or "asymptotic".
    #[getter]
    fn method(&self) -> &'static str {
        self.0.method.as_str()
    }

    #[getter]
    fn branch(&self) -> &'static str {
        self.0.branch.as_str()
    }

    #[getter]
    fn caveat(&self) -> Option<&'static str> {
        self.0.caveat.map(|c| c.as_str())
    }

    fn __repr__(&self) -> String {
        format!(
            "EntropyResult(quantity={:?}, value={}, method={:?})",
            self.0.quantity.as_str(),
            self.0.value,
            self.0.method.as_str()
        )
    }
}

/// A stationary state (n, l) of the D-dimensional oscillator with strength lam.
#[pyclass(frozen, from_py_object, name = "OscillatorState")]
#[derive(Clone)]
struct PyOscillatorState(OscillatorState);

impl PyOscillatorState {
    fn quantity(
        &self,
        py: Python<'_>,
        quantity: entropy::Quantity,
        p: f64,
        method: &str,
        accuracy: Option<PyAccuracy>,
    ) -> PyResult<PyEntropyResult> {
        let method = parse_method(method)?;
        let (state, acc) = (self.0, accuracy_or_default(accuracy));
        py.detach(move || entropy::evaluate(&state, quantity, p, method, &acc))
            .map(PyEntropyResult)
            .or_raise()
    }
}

#[pymethods]
impl PyOscillatorState {
    #[new]
    #[pyo3(signature = (n, l, dim, lam = 1.0))]
    fn new(n: usize, l: usize, dim: f64, lam: f64) -> PyResult<Self> {
        OscillatorState::new(n, l, dim, lam).map(PyOscillatorState).or_raise()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn l(&self) -> usize {
        self.0.l
    }

    #[getter]
    fn dim(&self) -> f64 {
        self.0.dim
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda
    }

    fn energy(&self) -> f64 {
        entropy::energy(&self.0)
    }

    fn spec(&self, p: f64) -> PyResult<PyNormSpec> {
        self.0.spec(p).map(PyNormSpec).or_raise()
    }

    fn radial_density(&self, r: f64) -> PyResult<f64> {
        entropy::radial_density(&self.0, r).or_raise()
    }

    #[pyo3(signature = (accuracy = None))]
    fn radial_normalization(&self, py: Python<'_>, accuracy: Option<PyAccuracy>) -> PyResult<PyQuadratureResult> {
        let (state, acc) = (self.0, accuracy_or_default(accuracy));
        py.detach(move || entropy::radial_normalization(&state, &acc))
            .map(PyQuadratureResult)
            .or_raise()
    }

    #[pyo3(signature = (p, method = "auto", accuracy = None))]
    fn entropic_moment(
        &self,
        py: Python<'_>,
        p: f64,
        method: &str,
        accuracy: Option<PyAccuracy>,
    ) -> PyResult<PyEntropyResult> {
        self.quantity(py, entropy::Quantity::Wp, p, method, accuracy)
    }

    #[pyo3(signature = (p, method = "auto", accuracy = None))]
    fn renyi_entropy(
        &self,
        py: Python<'_>,
        p: f64,
        method: &str,
        accuracy: Option<PyAccuracy>,
    ) -> PyResult<PyEntropyResult> {
        self.quantity(py, entropy::Quantity::Renyi, p, method, accuracy)
    }

    #[pyo3(signature = (p, method = "auto", accuracy = None))]
    fn renyi_power(
        &self,
        py: Python<'_>,
        p: f64,
        method: &str,
        accuracy: Option<PyAccuracy>,
    ) -> PyResult<PyEntropyResult> {
        self.quantity(py, entropy::Quantity::Power, p, method, accuracy)
    }

    #[pyo3(signature = (method = "auto", accuracy = None))]
    fn disequilibrium(&self, py: Python<'_>, method: &str, accuracy: Option<PyAccuracy>) -> PyResult<PyEntropyResult> {
        self.quantity(py, entropy::Quantity::Disequilibrium, 2.0, method, accuracy)
    }

    fn __repr__(&self) -> String {
        let s = &self.0;
        format!("OscillatorState(n={}, l={}, dim={}, lam={})", s.n, s.l, s.dim, s.lambda)
    }
}

#[pyfunction]
fn log_gamma(x: f64) -> PyResult<f64> {
    special::log_gamma(x).or_raise()
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    special::gamma(x).or_raise()
}

#[pyfunction]
fn bessel_j(nu: f64, x: f64) -> PyResult<f64> {
    special::bessel_j(nu, x).or_raise()
}

#[pyfunction]
fn airy_ai(x: f64) -> f64 {
    special::airy_ai(x)
}

/// pi 3^(-1/3) Ai(-3^(-1/3) t).
#[pyfunction]
fn airy_a(t: f64) -> f64 {
    special::airy_a(t)
}

/// k-th zero of Ai, counted from 1.
#[pyfunction]
fn airy_ai_zero(k: usize) -> PyResult<f64> {
    if k == 0 {
        return Err(PyValueError::new_err("Airy zeros are numbered from 1"));
    }
    Ok(special::airy_ai_zero(k))
}

#[pyfunction]
fn cosine_constant(beta: f64, p: f64) -> PyResult<f64> {
    constants::cosine_constant(beta, p).or_raise()
}

#[pyfunction]
#[pyo3(signature = (alpha, beta, p, accuracy = None))]
fn bessel_constant(py: Python<'_>, alpha: f64, beta: f64, p: f64, accuracy: Option<PyAccuracy>) -> PyResult<f64> {
    let acc = accuracy_or_default(accuracy);
    py.detach(move || constants::bessel_constant(alpha, beta, p, &acc))
        .or_raise()
}

#[pyfunction]
#[pyo3(signature = (p, accuracy = None))]
fn airy_constant(py: Python<'_>, p: f64, accuracy: Option<PyAccuracy>) -> PyResult<f64> {
    let acc = accuracy_or_default(accuracy);
    py.detach(move || constants::airy_constant(p, &acc)).or_raise()
}

type CriterionRow = (usize, &'static str, &'static str, String, f64);

/// Runs the acceptance criteria; returns (id, title, status, detail, seconds)
/// tuples with status "PASS", "FAIL" or "SKIP".
#[pyfunction]
#[pyo3(signature = (fast = false, only = None, zones = None, accuracy = None))]
fn verify(
    py: Python<'_>,
    fast: bool,
    only: Option<Vec<usize>>,
    zones: Option<PyZoneConfig>,
    accuracy: Option<PyAccuracy>,
) -> PyResult<Vec<CriterionRow>> {
    let ids = only.unwrap_or_else(|| (1..=CRITERIA).collect());
    if let Some(bad) = ids.iter().find(|&&id| id == 0 || id > CRITERIA) {
        return Err(PyValueError::new_err(format!("no criterion {bad}")));
    }
    let opts = VerifyOptions {
        fast,
        zones: zones_or_default(zones),
        accuracy: accuracy_or_default(accuracy),
    };
    Ok(py.detach(move || {
        ids.iter()
            .map(|&id| {
                let r = run_criterion(id, &opts);
                (r.id, r.title, r.status.as_str(), r.detail, r.elapsed.as_secs_f64())
            })
            .collect()
    }))
}

#[pymodule]
fn rydberg_renyi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("RydbergRenyiError", py.get_type::<RydbergRenyiError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("PoleError", py.get_type::<PoleError>())?;
    m.add("DivergenceError", py.get_type::<DivergenceError>())?;
    m.add("ToleranceError", py.get_type::<ToleranceError>())?;
    m.add("OverflowError", py.get_type::<OverflowError>())?;

    m.add_class::<PyAccuracy>()?;
    m.add_class::<PyZoneConfig>()?;
    m.add_class::<PyLaguerreParams>()?;
    m.add_class::<PyNormSpec>()?;
    m.add_class::<PyRegime>()?;
    m.add_class::<PyQuadratureResult>()?;
    m.add_class::<PyAsymptoticNorm>()?;
    m.add_class::<PyOscillatorState>()?;
    m.add_class::<PyEntropyResult>()?;

    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(airy_ai, m)?)?;
    m.add_function(wrap_pyfunction!(airy_a, m)?)?;
    m.add_function(wrap_pyfunction!(airy_ai_zero, m)?)?;
    m.add_function(wrap_pyfunction!(cosine_constant, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_constant, m)?)?;
    m.add_function(wrap_pyfunction!(airy_constant, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
