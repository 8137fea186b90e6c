//! Python bindings: catalogued models, closed-form 2x2 eigenvalues, spacing
//! laws, seeded sampling and the discriminant oracles.

use brody_core::ensembles::catalog;
use brody_core::mat2::{clean_spurious_imag, DEFAULT_IMAG_TOL};
use brody_core::sim::{self, ks_statistic, ks_threshold};
use brody_core::verify::{self, DISCRIMINANT_TOL};
use brody_core::{Complex64, Driver, ModelSpec, SimConfig, SpacingLaw};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind_name(kind: brody_core::PairKind) -> &'static str {
    match kind {
        brody_core::PairKind::RealPair => "real",
        brody_core::PairKind::ConjugatePair => "conjugate",
        brody_core::PairKind::GenericComplex => "generic",
    }
}

/// A catalogued model at a fixed Brody parameter.
#[pyclass(name = "Model", module = "brody", from_py_object)]
#[derive(Clone)]
struct PyModel {
    spec: ModelSpec,
}

#[pymethods]
impl PyModel {
    #[new]
    #[pyo3(signature = (id, q, driver=None, sigma=None, constants=None))]
    fn new(
        id: &str,
        q: f64,
        driver: Option<&str>,
        sigma: Option<f64>,
        constants: Option<Vec<Complex64>>,
    ) -> PyResult<Self> {
        let mut spec = catalog::model(id, q).map_err(err)?;
        let s = sigma.unwrap_or(1.0);
        spec.driver = match (driver, sigma) {
            (None, None) => spec.driver,
            (None, Some(s)) => match spec.driver {
                Driver::Exponential { .. } => Driver::Exponential { sigma_e: s },
                Driver::Gamma2 { .. } => Driver::Gamma2 { sigma_g: s },
                Driver::RayleighSquares { .. } => Driver::RayleighSquares { sigma_r: s },
            },
            (Some("exp"), _) => Driver::Exponential { sigma_e: s },
            (Some("gamma2"), _) => Driver::Gamma2 { sigma_g: s },
            (Some("normal-squares"), _) => Driver::RayleighSquares { sigma_r: s },
            (Some(other), _) => return Err(err(format!("unknown driver `{other}`"))),
        };
        spec.driver.check().map_err(err)?;
        if let Some(c) = constants {
            spec.constants = c;
        }
        Ok(Self { spec })
    }

    #[getter]
    fn id(&self) -> String {
        self.spec.id.clone()
    }

    #[getter]
    fn q(&self) -> f64 {
        self.spec.q
    }

    #[getter]
    fn family(&self) -> String {
        self.spec.family.name()
    }

    #[getter]
    fn constants(&self) -> Vec<Complex64> {
        self.spec.constants.clone()
    }

    /// Discriminant constant, or `None` for models checked by the generalized condition.
    #[getter]
    fn k(&self) -> Option<Complex64> {
        brody_core::discriminant_constant(&self.spec).ok()
    }

    /// Constraint report as a dict with `ok`, `k`, `mode`, `case`, `violations`, `notes`.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = brody_core::validate(&self.spec);
        let d = PyDict::new(py);
        d.set_item("ok", r.ok)?;
        d.set_item("k", r.k)?;
        d.set_item("mode", r.mode.map(|m| format!("{m:?}")))?;
        d.set_item("case", r.case_label)?;
        let v: Vec<(String, f64)> = r.violations.into_iter().map(|v| (v.condition, v.residual)).collect();
        d.set_item("violations", v)?;
        d.set_item("notes", r.notes)?;
        Ok(d)
    }

    /// `n` seeded realizations as `(matrix, y)` pairs.
    #[pyo3(signature = (n, seed=0))]
    fn realizations(&self, n: usize, seed: u64) -> Vec<(PyMatrix2, f64)> {
        sim::map_realizations(&self.spec, n, seed, |_, r| (PyMatrix2 { m: r.matrix }, r.y))
    }

    fn __repr__(&self) -> String {
        format!("Model('{}', q={})", self.spec.id, self.spec.q)
    }
}

/// A 2x2 complex matrix with closed-form eigenvalues.
#[pyclass(name = "Matrix2", module = "brody", from_py_object)]
#[derive(Clone)]
struct PyMatrix2 {
    m: brody_core::Matrix2,
}

#[pymethods]
impl PyMatrix2 {
    #[new]
    fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m: brody_core::Matrix2::new(m11, m12, m21, m22) }
    }

    fn entries(&self) -> [[Complex64; 2]; 2] {
        [[self.m.m11, self.m.m12], [self.m.m21, self.m.m22]]
    }

    fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    fn det(&self) -> Complex64 {
        self.m.det()
    }

    fn discriminant(&self) -> Complex64 {
        self.m.discriminant()
    }

    /// `(lambda_plus, lambda_minus, kind)` with kind `real`, `conjugate` or `generic`.
    fn eigenvalues(&self) -> (Complex64, Complex64, &'static str) {
        let p = clean_spurious_imag(self.m.eigenvalues(), DEFAULT_IMAG_TOL);
        (p.plus, p.minus, kind_name(p.kind))
    }

    fn spacing(&self) -> PyResult<f64> {
        clean_spurious_imag(self.m.eigenvalues(), DEFAULT_IMAG_TOL).spacing().map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Matrix2({:?})", self.entries())
    }
}

#[pyfunction]
fn catalog_ids() -> Vec<&'static str> {
    catalog::ids()
}

fn law(name: &str, q: f64, sigma: f64, tau: f64) -> PyResult<SpacingLaw> {
    SpacingLaw::parse(name, q, sigma, tau).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (name, z, q=0.0, sigma=1.0, tau=1.0))]
fn law_pdf(name: &str, z: Vec<f64>, q: f64, sigma: f64, tau: f64) -> PyResult<Vec<f64>> {
    let l = law(name, q, sigma, tau)?;
    Ok(z.into_iter().map(|z| l.pdf(z)).collect())
}

#[pyfunction]
#[pyo3(signature = (name, z, q=0.0, sigma=1.0, tau=1.0))]
fn law_cdf(name: &str, z: Vec<f64>, q: f64, sigma: f64, tau: f64) -> PyResult<Vec<f64>> {
    let l = law(name, q, sigma, tau)?;
    Ok(z.into_iter().map(|z| l.cdf(z)).collect())
}

#[pyfunction]
#[pyo3(signature = (name, q=0.0, sigma=1.0, tau=1.0))]
fn law_mean(name: &str, q: f64, sigma: f64, tau: f64) -> PyResult<f64> {
    Ok(law(name, q, sigma, tau)?.mean())
}

/// Samples `n` realizations; returns spacings, scaled spacings and the KS test
/// against the model's target law.
#[pyfunction]
#[pyo3(signature = (model, n, seed=0))]
fn sample<'py>(py: Python<'py>, model: &PyModel, n: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let config = SimConfig::new(model.spec.clone(), n, seed);
    let set = py.detach(|| sim::run(&config)).map_err(err)?;
    let mut sorted = set.scaled.clone();
    sorted.sort_by(f64::total_cmp);
    let ks = ks_statistic(&sorted, &config.law);
    let d = PyDict::new(py);
    d.set_item("law", config.law.canonical().name())?;
    d.set_item("sample_mean", set.sample_mean)?;
    d.set_item("ks", ks)?;
    d.set_item("ks_threshold", ks_threshold(n))?;
    d.set_item("real_pairs", set.real_pairs)?;
    d.set_item("conjugate_pairs", set.conjugate_pairs)?;
    d.set_item("discriminant_violations", set.discriminant_violations)?;
    d.set_item("spacings", set.spacings)?;
    d.set_item("scaled", set.scaled)?;
    Ok(d)
}

/// Per-sample check of `D(M) = k y^(2/(q+1))`; returns `(max_residual, violations)`.
#[pyfunction]
#[pyo3(signature = (model, n, seed=0, tol=DISCRIMINANT_TOL))]
fn check_condition(py: Python<'_>, model: &PyModel, n: usize, seed: u64, tol: f64) -> PyResult<(f64, usize)> {
    let out = py.detach(|| verify::check_condition_8(&model.spec, n, seed, tol)).map_err(err)?;
    Ok((out.max_relative_residual, out.violations.len()))
}

/// Running mean spacing over the population mean at each checkpoint.
#[pyfunction]
#[pyo3(signature = (model, checkpoints, seed=0))]
fn lln_trace(py: Python<'_>, model: &PyModel, checkpoints: Vec<usize>, seed: u64) -> PyResult<Vec<(usize, f64)>> {
    let config = SimConfig::new(model.spec.clone(), *checkpoints.last().unwrap_or(&1), seed);
    py.detach(|| sim::lln_trace(&config, &checkpoints)).map_err(err)
}

#[pymodule]
fn brody(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModel>()?;
    m.add_class::<PyMatrix2>()?;
    m.add_function(wrap_pyfunction!(catalog_ids, m)?)?;
    m.add_function(wrap_pyfunction!(law_pdf, m)?)?;
    m.add_function(wrap_pyfunction!(law_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(law_mean, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(check_condition, m)?)?;
    m.add_function(wrap_pyfunction!(lln_trace, m)?)?;
    Ok(())
}
