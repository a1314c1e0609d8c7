//! Python bindings for `superray`.
//!
//! Frequencies passed to `Interface` methods are offsets `x = ω/ω̃ − 1`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use superray::config::parse_config;
use superray::constants;
use superray::media;
use superray::poles::{self, PoleOutcome};
use superray::scattering::{self, InterfaceScattering, Method};
use superray::sweep;

create_exception!(superray, DomainError, PyValueError);
create_exception!(superray, ConvergenceError, PyRuntimeError);

fn to_py(e: superray::Error) -> PyErr {
    match e {
        superray::Error::Convergence { .. } => ConvergenceError::new_err(e.to_string()),
        _ => DomainError::new_err(e.to_string()),
    }
}

#[pyclass(frozen, name = "PlasmaBandMedium")]
struct PyPlasmaBandMedium(media::PlasmaBandMedium);

#[pymethods]
impl PyPlasmaBandMedium {
    #[new]
    fn new(a: f64, omega0: f64) -> PyResult<Self> {
        media::PlasmaBandMedium::new(a, omega0).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn with_zero_crossing(a: f64, omega_tilde: f64) -> PyResult<Self> {
        media::PlasmaBandMedium::with_zero_crossing(a, omega_tilde)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a()
    }

    #[getter]
    fn omega0(&self) -> f64 {
        self.0.omega0()
    }

    #[getter]
    fn omega_tilde(&self) -> f64 {
        self.0.omega_tilde()
    }

    fn epsilon(&self, omega: f64) -> PyResult<f64> {
        self.0.epsilon(omega).map_err(to_py)
    }

    fn depsilon_domega(&self, omega: f64) -> PyResult<f64> {
        self.0.depsilon_domega(omega).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("PlasmaBandMedium(a={}, omega0={})", self.0.a(), self.0.omega0())
    }
}

#[pyclass(frozen, name = "WeakShockPair")]
struct PyWeakShockPair(media::WeakShockPair);

#[pymethods]
impl PyWeakShockPair {
    #[new]
    #[pyo3(signature = (a, delta, omega_tilde = 1.0))]
    fn new(a: f64, delta: f64, omega_tilde: f64) -> PyResult<Self> {
        media::WeakShockPair::new(a, omega_tilde, delta)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.0.delta()
    }

    #[getter]
    fn omega_tilde(&self) -> f64 {
        self.0.omega_tilde()
    }

    /// `(ε₁, ε₂)` at frequency `omega`.
    fn epsilons(&self, omega: f64) -> PyResult<(f64, f64)> {
        self.0.epsilons(omega).map_err(to_py)
    }

    /// `ε₁ − ε₂ = 2aδ`.
    fn jump(&self) -> f64 {
        self.0.jump()
    }

    fn depsilon_domega(&self) -> f64 {
        self.0.depsilon_domega()
    }

    fn __repr__(&self) -> String {
        format!(
            "WeakShockPair(a={}, delta={}, omega_tilde={})",
            self.0.a(),
            self.0.delta(),
            self.0.omega_tilde()
        )
    }
}

#[pyclass(frozen, get_all, name = "ReflectionSolution")]
struct PyReflectionSolution {
    r: f64,
    t: f64,
    omega: f64,
    omega_reflected: f64,
    omega_transmitted: f64,
    denominator: f64,
    method: String,
    pole_proximity: bool,
}

#[pymethods]
impl PyReflectionSolution {
    fn __repr__(&self) -> String {
        format!("ReflectionSolution(r={}, t={}, method={:?})", self.r, self.t, self.method)
    }
}

#[pyclass(frozen, get_all, name = "PoleRecord")]
struct PyPoleRecord {
    omega_star: f64,
    x_offset: f64,
    bracket: (f64, f64),
    f_residual: f64,
    iterations: usize,
    asymptotic_prediction: f64,
}

#[pymethods]
impl PyPoleRecord {
    fn __repr__(&self) -> String {
        format!("PoleRecord(x_offset={:e}, f_residual={:e})", self.x_offset, self.f_residual)
    }
}

fn parse_method(method: &str) -> PyResult<Method> {
    match method {
        "full" => Ok(Method::Full),
        "first_order" | "first-order" => Ok(Method::FirstOrder),
        "oracle" => Ok(Method::Oracle),
        other => Err(PyValueError::new_err(format!(
            "unknown method {other:?}; expected full, first_order or oracle"
        ))),
    }
}

/// A moving interface between two media.
#[pyclass(frozen, name = "Interface")]
struct PyInterface(InterfaceScattering);

#[pymethods]
impl PyInterface {
    #[staticmethod]
    fn weak_shock(pair: &PyWeakShockPair, v: f64) -> PyResult<Self> {
        InterfaceScattering::weak_shock(pair.0, v)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn plasma(
        incident: &PyPlasmaBandMedium,
        transmitted: &PyPlasmaBandMedium,
        v: f64,
    ) -> PyResult<Self> {
        InterfaceScattering::from_media(incident.0.into(), transmitted.0.into(), v)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn v(&self) -> f64 {
        self.0.v()
    }

    #[getter]
    fn omega_tilde(&self) -> f64 {
        self.0.omega_tilde()
    }

    fn omega_at(&self, x: f64) -> f64 {
        self.0.omega_at(x)
    }

    fn epsilons(&self, x: f64) -> (f64, f64) {
        self.0.epsilons(x)
    }

    #[pyo3(signature = (x, method = "full"))]
    fn reflection(&self, x: f64, method: &str) -> PyResult<PyReflectionSolution> {
        let sol = scattering::reflection(&self.0, x, parse_method(method)?).map_err(to_py)?;
        Ok(PyReflectionSolution {
            r: sol.r,
            t: sol.t,
            omega: sol.triple.omega,
            omega_reflected: sol.triple.omega_reflected,
            omega_transmitted: sol.triple.omega_transmitted,
            denominator: sol.denominator_value,
            method: method.replace('-', "_"),
            pole_proximity: sol.pole_proximity,
        })
    }

    fn f_denominator(&self, x: f64) -> PyResult<f64> {
        scattering::f_denominator(&self.0, x).map_err(to_py)
    }

    /// Root of `f` above the crossing, or `None` when there is none.
    #[pyo3(signature = (rel_tol = poles::DEFAULT_REL_TOL))]
    fn find_pole(&self, rel_tol: f64) -> PyResult<Option<PyPoleRecord>> {
        Ok(match poles::find_pole(&self.0, rel_tol).map_err(to_py)? {
            PoleOutcome::Pole(p) => Some(PyPoleRecord {
                omega_star: p.omega_star,
                x_offset: p.x_offset,
                bracket: p.bracket,
                f_residual: p.f_residual,
                iterations: p.iterations,
                asymptotic_prediction: p.asymptotic_prediction,
            }),
            PoleOutcome::NoPole(_) => None,
        })
    }
}

/// Plasma frequency in rad/s for an electron density in cm⁻³.
#[pyfunction]
fn plasma_frequency(n_e: f64) -> PyResult<f64> {
    constants::plasma_frequency(n_e).map_err(to_py)
}

#[pyfunction]
fn omega_to_ev(omega: f64) -> PyResult<f64> {
    constants::omega_to_ev(omega).map_err(to_py)
}

#[pyfunction]
fn ev_to_omega(energy: f64) -> PyResult<f64> {
    constants::ev_to_omega(energy).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n_e, a = 1.0))]
fn emitted_energy_estimate(n_e: f64, a: f64) -> PyResult<f64> {
    sweep::emitted_energy_estimate(n_e, a).map_err(to_py)
}

#[pyfunction]
fn fresnel_normal(epsilon1: f64, epsilon2: f64) -> f64 {
    scattering::fresnel_normal(epsilon1, epsilon2)
}

#[pyfunction]
fn pole_asymptotic(a: f64, v: f64) -> f64 {
    poles::pole_asymptotic(a, v)
}

/// Runs a sweep described by configuration text and returns CSV.
#[pyfunction]
fn sweep_csv(py: Python<'_>, config: &str) -> PyResult<String> {
    let config = parse_config(config).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let rows = py
        .detach(|| sweep::run_sweep(&config))
        .map_err(to_py)?;
    let mut out = Vec::new();
    sweep::write_csv(&rows, &mut out).map_err(to_py)?;
    Ok(String::from_utf8(out).expect("CSV is ASCII"))
}

#[pymodule]
#[pyo3(name = "superray")]
fn superray_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    m.add("ConvergenceError", m.py().get_type::<ConvergenceError>())?;
    m.add_class::<PyPlasmaBandMedium>()?;
    m.add_class::<PyWeakShockPair>()?;
    m.add_class::<PyInterface>()?;
    m.add_class::<PyReflectionSolution>()?;
    m.add_class::<PyPoleRecord>()?;
    m.add_function(wrap_pyfunction!(plasma_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(omega_to_ev, m)?)?;
    m.add_function(wrap_pyfunction!(ev_to_omega, m)?)?;
    m.add_function(wrap_pyfunction!(emitted_energy_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(fresnel_normal, m)?)?;
    m.add_function(wrap_pyfunction!(pole_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_csv, m)?)?;
    Ok(())
}
