//! Python bindings: dispersion laws, exact resonance search, class tables,
//! spherical triad dynamics and spectra.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use lamina_core::classes::classify_mode;
use lamina_core::dispersion::{DispersionLaw, WaveVector};
use lamina_core::dynamics::{
    bve_coefficients, demo_triad, integrate_triad_sampled, AmplitudeState, BveOptions, BveTriad, Normalization,
    Trajectory, DEFAULT_HORIZON, DEFAULT_STEP,
};
use lamina_core::exact::{radical_sum_is_zero, RadicalNumber, RadicalSum, Rational};
use lamina_core::report::{ClassTable, SearchExport, SpectrumSeries, TrajectoryExport};
use lamina_core::search::{
    brute_force_search_with, build_interaction_graph, class_based_search_with, nonresonant_census,
    validate_certificate, Certificate, Conservation, ResonanceCondition, ResonantSet, SearchDomain, SearchOptions,
    Signs, SolutionSet,
};

create_exception!(lamina, LaminaError, PyValueError);

fn err(e: lamina_core::Error) -> PyErr {
    LaminaError::new_err((e.to_string(), e.exit_code()))
}

fn wv((m, n): (i32, i32)) -> WaveVector {
    WaveVector::new(m, n)
}

fn tuple(k: &WaveVector) -> (i32, i32) {
    (k.m, k.n)
}

#[pyclass(name = "Law", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLaw(DispersionLaw);

#[pymethods]
impl PyLaw {
    /// `rossby`, `drift`, `capillary`, `gravity`, `power:P/Q:BASE` or `float:...`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(PyLaw).map_err(err)
    }

    fn omega(&self, m: i32, n: i32) -> PyResult<f64> {
        self.0.omega_float(WaveVector::new(m, n)).map_err(err)
    }

    /// Exact frequency as text, e.g. `1/5·5^(1/2)`.
    fn omega_exact(&self, m: i32, n: i32) -> PyResult<String> {
        self.0
            .omega_exact(WaveVector::new(m, n))
            .map(|w| w.to_string())
            .map_err(err)
    }

    #[getter]
    fn is_exact(&self) -> bool {
        self.0.is_exact()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    /// Domain modes for the bound `D`.
    fn modes(&self, domain: u32) -> PyResult<Vec<(i32, i32)>> {
        Ok(SearchDomain::new(domain)
            .map_err(err)?
            .modes(&self.0)
            .iter()
            .map(tuple)
            .collect())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Law('{}')", self.0)
    }
}

fn condition(
    law: &DispersionLaw,
    arity: usize,
    signs: Option<&str>,
    conservation: Option<&str>,
) -> PyResult<ResonanceCondition> {
    let mut cond = match signs {
        Some(s) => ResonanceCondition::new(s.parse::<Signs>().map_err(err)?, Conservation::default_for(law)),
        None => ResonanceCondition::default_for(law, arity).map_err(err)?,
    };
    if let Some(c) = conservation {
        cond.conservation = c.parse().map_err(err)?;
    }
    Ok(cond)
}

/// One resonant tuple.
#[pyclass(name = "Resonance", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyResonance(ResonantSet);

#[pymethods]
impl PyResonance {
    #[getter]
    fn modes(&self) -> Vec<(i32, i32)> {
        self.0.modes().iter().map(tuple).collect()
    }

    #[getter]
    fn signs(&self) -> Vec<i8> {
        self.0.signs().to_vec()
    }

    /// `rational-identity`, `per-class-identity` or `uncertified`.
    #[getter]
    fn certificate(&self) -> &'static str {
        match self.0.certificate() {
            Certificate::RationalIdentity => "rational-identity",
            Certificate::PerClassIdentity(_) => "per-class-identity",
            Certificate::Uncertified => "uncertified",
        }
    }

    #[getter]
    fn tags(&self) -> Vec<&'static str> {
        self.0.tags().names()
    }

    #[getter]
    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    /// Re-checks the certificate in exact arithmetic.
    fn validate(&self, law: &PyLaw) -> PyResult<bool> {
        validate_certificate(&law.0, &self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        let modes: Vec<String> = self.0.modes().iter().map(|k| k.to_string()).collect();
        format!("Resonance([{}], '{}')", modes.join(", "), self.0.signs())
    }
}

/// Search results with the inputs that produced them.
#[pyclass(name = "Solutions", frozen)]
struct PySolutions {
    law: DispersionLaw,
    condition: ResonanceCondition,
    domain: SearchDomain,
    sets: SolutionSet,
}

#[pymethods]
impl PySolutions {
    fn __len__(&self) -> usize {
        self.sets.len()
    }

    fn __getitem__(&self, i: isize) -> PyResult<PyResonance> {
        let len = self.sets.len() as isize;
        let j = if i < 0 { i + len } else { i };
        if !(0..len).contains(&j) {
            return Err(PyIndexError::new_err("solution index out of range"));
        }
        Ok(PyResonance(self.sets.as_slice()[j as usize]))
    }

    fn __eq__(&self, other: &PySolutions) -> bool {
        self.sets == other.sets
    }

    /// The solution on exactly these modes, if any.
    fn find(&self, modes: Vec<(i32, i32)>) -> Option<PyResonance> {
        let modes: Vec<WaveVector> = modes.into_iter().map(wv).collect();
        self.sets.find_modes(&modes).copied().map(PyResonance)
    }

    fn to_json(&self) -> PyResult<String> {
        SearchExport::new(&self.law, &self.condition, &self.domain, &self.sets)
            .and_then(|e| e.to_json())
            .map_err(err)
    }

    fn to_csv(&self) -> PyResult<String> {
        SearchExport::new(&self.law, &self.condition, &self.domain, &self.sets)
            .and_then(|e| e.to_csv())
            .map_err(err)
    }

    /// Connected components of the interaction graph over the domain,
    /// largest first.
    fn clusters(&self) -> Vec<Vec<(i32, i32)>> {
        let graph = build_interaction_graph(self.sets.as_slice(), &self.domain.modes(&self.law));
        graph.clusters.iter().map(|c| c.iter().map(tuple).collect()).collect()
    }
}

/// Resonant tuples in the domain `1 <= |m|, |n| <= D` of the law.
#[pyfunction]
#[pyo3(signature = (law, domain, arity=3, signs=None, conservation=None, method="class", workers=1))]
#[allow(clippy::too_many_arguments)]
fn search(
    py: Python<'_>,
    law: &PyLaw,
    domain: u32,
    arity: usize,
    signs: Option<&str>,
    conservation: Option<&str>,
    method: &str,
    workers: usize,
) -> PyResult<PySolutions> {
    let law = law.0;
    let cond = condition(&law, arity, signs, conservation)?;
    let domain = SearchDomain::new(domain).map_err(err)?;
    let opts = SearchOptions {
        workers,
        ..SearchOptions::default()
    };
    let sets = py
        .detach(|| match method {
            "class" => class_based_search_with(&law, &cond, &domain, &opts),
            "brute" => brute_force_search_with(&law, &cond, &domain, &opts),
            other => Err(lamina_core::Error::Config(format!(
                "unknown method `{other}` (class or brute)"
            ))),
        })
        .map_err(err)?;
    Ok(PySolutions {
        law,
        condition: cond,
        domain,
        sets,
    })
}

/// Domain modes that take part in no solution.
#[pyfunction]
#[pyo3(signature = (law, domain, arity=3))]
fn nonresonant(py: Python<'_>, law: &PyLaw, domain: u32, arity: usize) -> PyResult<Vec<(i32, i32)>> {
    let law = law.0;
    let cond = condition(&law, arity, None, None)?;
    let domain = SearchDomain::new(domain).map_err(err)?;
    let modes = py.detach(|| nonresonant_census(&law, &cond, &domain)).map_err(err)?;
    Ok(modes.iter().map(tuple).collect())
}

/// `(kernel, degree, gamma)` of a mode.
#[pyfunction]
fn classify(law: &PyLaw, m: i32, n: i32) -> PyResult<(u64, u32, u64)> {
    let c = classify_mode(&law.0, WaveVector::new(m, n)).map_err(err)?;
    Ok((c.class_id.kernel, c.class_id.degree, c.gamma))
}

/// Class table of the domain as JSON.
#[pyfunction]
fn class_table(law: &PyLaw, domain: u32) -> PyResult<String> {
    let domain = SearchDomain::new(domain).map_err(err)?;
    ClassTable::build(&law.0, &domain)
        .and_then(|t| t.to_json())
        .map_err(err)
}

/// Whether `Σ coeff · q^(1/degree)` is exactly zero; coefficients are
/// rationals written as `p` or `p/q`.
#[pyfunction]
fn radical_sum_zero(degree: u32, terms: Vec<(String, u64)>) -> PyResult<bool> {
    let terms = terms
        .iter()
        .map(|(c, q)| RadicalNumber::new(c.parse::<Rational>()?, *q, degree))
        .collect::<lamina_core::Result<Vec<_>>>()
        .map_err(err)?;
    let sum = RadicalSum::from_terms(degree, terms).map_err(err)?;
    Ok(radical_sum_is_zero(&sum).0)
}

/// Interaction coefficient and amplitude equations of a spherical triad.
#[pyclass(name = "Triad", frozen)]
struct PyTriad(BveTriad);

#[pymethods]
impl PyTriad {
    /// `modes` as `[(m, n)] * 3` with `m1 + m2 = m3`; the demo triad when
    /// omitted.
    #[new]
    #[pyo3(signature = (modes=None, normalization="four-pi", quadrature_order=64))]
    fn new(modes: Option<Vec<(i32, i32)>>, normalization: &str, quadrature_order: usize) -> PyResult<Self> {
        let modes = match modes {
            None => demo_triad(),
            Some(v) => {
                let v: [(i32, i32); 3] = v
                    .try_into()
                    .map_err(|_| PyValueError::new_err("a triad has exactly three modes"))?;
                v.map(wv)
            }
        };
        let normalization = match normalization {
            "unnormalized" => Normalization::Unnormalized,
            "orthonormal" => Normalization::Orthonormal,
            "four-pi" => Normalization::FourPi,
            other => return Err(PyValueError::new_err(format!("unknown normalization `{other}`"))),
        };
        let opts = BveOptions {
            normalization,
            quadrature_order,
            ..BveOptions::default()
        };
        bve_coefficients(modes, &opts).map(PyTriad).map_err(err)
    }

    #[getter]
    fn modes(&self) -> Vec<(i32, i32)> {
        self.0.modes.iter().map(tuple).collect()
    }

    #[getter]
    fn z(&self) -> f64 {
        self.0.z
    }

    /// `N = n(n+1)` per mode.
    #[getter]
    fn n(&self) -> [u64; 3] {
        self.0.n
    }

    /// Coefficients `α` of `A' = α · (quadratic term)`.
    #[getter]
    fn alphas(&self) -> PyResult<Vec<Complex64>> {
        Ok(self.0.system().map_err(err)?.alphas.to_vec())
    }

    /// RK4 run from the given amplitudes.
    #[pyo3(signature = (amplitudes, step=DEFAULT_STEP, horizon=DEFAULT_HORIZON, sample_every=100))]
    fn simulate(
        &self,
        py: Python<'_>,
        amplitudes: [Complex64; 3],
        step: f64,
        horizon: f64,
        sample_every: usize,
    ) -> PyResult<PyTrajectory> {
        let system = self.0.system().map_err(err)?;
        let traj = py
            .detach(|| integrate_triad_sampled(&system, &AmplitudeState::new(amplitudes), horizon, step, sample_every))
            .map_err(err)?;
        let export = TrajectoryExport::new(Some(&self.0), &traj, step, horizon).map_err(err)?;
        Ok(PyTrajectory { traj, export })
    }
}

#[pyclass(name = "Trajectory", frozen)]
struct PyTrajectory {
    traj: Trajectory,
    export: TrajectoryExport,
}

#[pymethods]
impl PyTrajectory {
    #[getter]
    fn t(&self) -> Vec<f64> {
        self.traj.samples.iter().map(|s| s.t).collect()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<[Complex64; 3]> {
        self.traj.samples.iter().map(|s| s.a).collect()
    }

    /// `(I1, I2)` per sample.
    #[getter]
    fn invariants(&self) -> Vec<(f64, f64)> {
        self.traj.invariants.clone()
    }

    #[getter]
    fn max_relative_drift(&self) -> (f64, f64) {
        self.traj.max_relative_drift()
    }

    fn to_json(&self) -> PyResult<String> {
        self.export.to_json().map_err(err)
    }

    fn to_csv(&self) -> PyResult<String> {
        self.export.to_csv().map_err(err)
    }
}

/// `(k, C·k^exponent, hole)` over explicit wavenumbers or over the domain of
/// a search, with holes where resonant modes sit.
#[pyfunction]
#[pyo3(signature = (exponent, constant=1.0, wavenumbers=None, solutions=None))]
fn spectrum(
    exponent: &str,
    constant: f64,
    wavenumbers: Option<Vec<f64>>,
    solutions: Option<&PySolutions>,
) -> PyResult<Vec<(f64, f64, bool)>> {
    let exponent: Rational = exponent.parse().map_err(err)?;
    let series = match (wavenumbers, solutions) {
        (Some(ks), None) => SpectrumSeries::from_wavenumbers(&ks, exponent, constant),
        (None, Some(s)) => SpectrumSeries::over_domain(&s.law, &s.domain, exponent, constant, Some(&s.sets)),
        _ => return Err(PyValueError::new_err("give exactly one of wavenumbers or solutions")),
    }
    .map_err(err)?;
    Ok(series.points.iter().map(|p| (p.k.0, p.value.0, p.hole)).collect())
}

#[pymodule]
mod lamina {
    #[pymodule_export]
    use super::{
        class_table, classify, nonresonant, radical_sum_zero, search, spectrum, LaminaError, PyLaw, PyResonance,
        PySolutions, PyTrajectory, PyTriad,
    };
}
