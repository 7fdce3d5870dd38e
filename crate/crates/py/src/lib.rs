//! Python bindings. Events are plain `(t, x1, x2, x3)` tuples; policies use
//! the CLI tags `inst`, `plane:<slope>` and `blc`.

use blcsim::collapse::{self, CollapsePolicy};
use blcsim::diagram::{diagram_spec, parse_frame, render_svg};
use blcsim::kinematics::{self, Axis, Party};
use blcsim::minkowski::{self, Boost, Event};
use blcsim::{ordering, quantum, scenario};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

type Tuple4 = (f64, f64, f64, f64);

fn py_err(e: blcsim::Error) -> PyErr {
    match e {
        blcsim::Error::Domain(_) | blcsim::Error::Syntax { .. } | blcsim::Error::Semantic { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn event(e: Tuple4) -> Event {
    Event::new(e.0, e.1, e.2, e.3)
}

fn tuple(e: Event) -> Tuple4 {
    (e.t, e.x1, e.x2, e.x3)
}

fn policy(tag: &str) -> PyResult<CollapsePolicy> {
    CollapsePolicy::parse_tag(tag).map_err(py_err)
}

fn axis(v: [f64; 3]) -> PyResult<Axis> {
    Axis::new(v).map_err(py_err)
}

fn party(p: &str) -> PyResult<Party> {
    match p {
        "A" => Ok(Party::A),
        "B" => Ok(Party::B),
        _ => Err(PyValueError::new_err(format!("party must be 'A' or 'B', got {p:?}"))),
    }
}

/// Coordinates of `e` in the frame moving with rapidity `zeta` along x1.
#[pyfunction]
fn boost(e: Tuple4, zeta: f64) -> PyResult<Tuple4> {
    minkowski::boost(&event(e), &Boost::new(zeta)).map(tuple).map_err(py_err)
}

#[pyfunction]
fn inverse_boost(e: Tuple4, zeta: f64) -> PyResult<Tuple4> {
    minkowski::inverse_boost(&event(e), &Boost::new(zeta)).map(tuple).map_err(py_err)
}

/// `(s_squared, kind)` with kind one of "timelike", "spacelike", "lightlike".
#[pyfunction]
fn interval(e1: Tuple4, e2: Tuple4) -> (f64, String) {
    let c = minkowski::interval(&event(e1), &event(e2));
    (c.s_squared, c.kind.to_string())
}

#[pyfunction]
fn rapidity_from_beta(beta: f64) -> PyResult<f64> {
    minkowski::rapidity_from_beta(beta).map_err(py_err)
}

#[pyfunction]
fn proper_time_between(e1: Tuple4, e2: Tuple4) -> PyResult<f64> {
    kinematics::proper_time_between(&event(e1), &event(e2)).map_err(py_err)
}

/// Lab event at rest time `tau` on the worldline of rapidity `zeta`.
#[pyfunction]
fn worldline_event(zeta: f64, tau: f64) -> PyResult<Tuple4> {
    Ok(tuple(kinematics::Worldline::new(zeta).map_err(py_err)?.at_rest_time(tau)))
}

#[pyfunction]
fn derive_source(a1: Tuple4, b2: Tuple4, tau_a: f64, tau_b: f64) -> PyResult<Tuple4> {
    scenario::derive_source(&event(a1), &event(b2), tau_a, tau_b)
        .map(tuple)
        .map_err(py_err)
}

/// `(verdict, a1, a2, b1, b2)`: decision and arrival rest times.
#[pyfunction]
fn consistency_check(a1: Tuple4, b2: Tuple4, policy_tag: &str, zeta: f64) -> PyResult<(String, f64, f64, f64, f64)> {
    let d = collapse::consistency_check(&event(a1), &event(b2), policy(policy_tag)?, zeta).map_err(py_err)?;
    Ok((d.verdict.to_string(), d.a1, d.a2, d.b1, d.b2))
}

/// `(fraction_consistent, first_violation_zeta)` over the grid.
#[pyfunction]
fn inconsistency_scan(policy_tag: &str, zetas: Vec<f64>, times: Vec<f64>) -> PyResult<(f64, Option<f64>)> {
    let r = collapse::inconsistency_scan(policy(policy_tag)?, &zetas, &times);
    Ok((r.fraction_consistent(), r.first_violation_zeta()))
}

#[pyfunction]
fn blc_slope_limit(zetas: Vec<f64>) -> PyResult<Vec<f64>> {
    collapse::blc_slope_limit(&zetas).map_err(py_err)
}

/// "A" or "B".
#[pyfunction]
fn decide_order(tau_a: f64, tau_b: f64, dtau_a: f64, dtau_b: f64, seed: u64) -> String {
    ordering::decide_order(tau_a, tau_b, dtau_a, dtau_b, seed).first.to_string()
}

/// Singlet amplitudes in the order |−B+A⟩, |+B−A⟩, |+B+A⟩, |−B−A⟩ as
/// (real, imag) pairs.
#[pyfunction]
fn singlet() -> Vec<(f64, f64)> {
    quantum::singlet().amplitudes().iter().map(|c| (c.re, c.im)).collect()
}

/// Phase-canonical state after `party` measures `sign` (±1) along `axis`.
#[pyfunction]
fn collapse_singlet(party_label: &str, axis_v: [f64; 3], sign: i32) -> PyResult<Vec<(f64, f64)>> {
    let s = quantum::Sign::from_value(sign).ok_or_else(|| PyValueError::new_err("sign must be +1 or -1"))?;
    let psi = quantum::collapse_state(&quantum::singlet(), party(party_label)?, &axis(axis_v)?, s).map_err(py_err)?;
    Ok(psi.amplitudes().iter().map(|c| (c.re, c.im)).collect())
}

/// `(estimate, analytic, standard_error)` of the CHSH combination.
#[pyfunction]
#[pyo3(signature = (axes_a=None, axes_b=None, trials=100_000, seed=0))]
fn chsh_value(
    axes_a: Option<[[f64; 3]; 2]>,
    axes_b: Option<[[f64; 3]; 2]>,
    trials: u64,
    seed: u64,
) -> PyResult<(f64, f64, f64)> {
    let (oa, ob) = quantum::optimal_axes();
    let a = match axes_a {
        Some([x, y]) => [axis(x)?, axis(y)?],
        None => oa,
    };
    let b = match axes_b {
        Some([x, y]) => [axis(x)?, axis(y)?],
        None => ob,
    };
    let r = quantum::chsh_value(&a, &b, trials, seed).map_err(py_err)?;
    Ok((r.estimate, r.analytic, r.standard_error))
}

/// A parsed scenario configuration.
#[pyclass(frozen)]
struct Scenario {
    cfg: scenario::ScenarioConfig,
}

#[pymethods]
impl Scenario {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Scenario {
            cfg: scenario::parse_config(text).map_err(py_err)?,
        })
    }

    /// One of the shipped presets: "figure1", "s2_lightlike" or "chsh".
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        let cfg = match name {
            "figure1" => scenario::presets::figure1(),
            "s2_lightlike" => scenario::presets::s2_lightlike(),
            "chsh" => scenario::presets::chsh(),
            _ => return Err(PyValueError::new_err(format!("unknown preset {name:?}"))),
        };
        Ok(Scenario { cfg })
    }

    /// Copy with a different trial count and seed.
    #[pyo3(signature = (trials=None, seed=None))]
    fn with_run(&self, trials: Option<u64>, seed: Option<u64>) -> PyResult<Self> {
        let mut cfg = self.cfg.clone();
        cfg.trials = trials.unwrap_or(cfg.trials);
        cfg.seed = seed.unwrap_or(cfg.seed);
        cfg.validate().map_err(py_err)?;
        Ok(Scenario { cfg })
    }

    #[getter]
    fn trials(&self) -> u64 {
        self.cfg.trials
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.cfg.seed
    }

    #[getter]
    fn policy(&self) -> String {
        self.cfg.policy.tag()
    }

    /// Normalized configuration text.
    fn to_text(&self) -> String {
        self.cfg.to_text()
    }

    /// The emission event.
    fn source(&self) -> PyResult<Tuple4> {
        scenario::resolve_geometry(&self.cfg)
            .map(|g| tuple(g.source))
            .map_err(py_err)
    }

    fn run_trial(&self, index: u64) -> PyResult<TrialResult> {
        let log = scenario::run_trial(&self.cfg, index).map_err(py_err)?;
        Ok(TrialResult { log })
    }

    /// Ensemble statistics as text.
    fn run_ensemble(&self) -> PyResult<String> {
        scenario::run_ensemble(&self.cfg).map(|s| s.to_string()).map_err(py_err)
    }

    /// CHSH estimate of the ensemble, when both detectors have two axes.
    fn chsh(&self) -> PyResult<Option<(f64, f64)>> {
        let s = scenario::run_ensemble(&self.cfg).map_err(py_err)?;
        Ok(s.chsh.map(|c| (c.value, c.standard_error)))
    }

    /// SVG diagram in frame "A", "B" or "zeta:<v>".
    #[pyo3(signature = (frame="A"))]
    fn diagram_svg(&self, frame: &str) -> PyResult<String> {
        let zeta = parse_frame(frame, &self.cfg).map_err(py_err)?;
        diagram_spec(&self.cfg, zeta).map(|d| render_svg(&d)).map_err(py_err)
    }
}

#[pyclass(frozen)]
struct TrialResult {
    log: scenario::TrialLog,
}

#[pymethods]
impl TrialResult {
    /// "A" or "B".
    #[getter]
    fn first(&self) -> String {
        self.log.first().to_string()
    }

    #[getter]
    fn verdict(&self) -> String {
        self.log.consistency.verdict.to_string()
    }

    /// Signs (±1) of A's and B's results.
    #[getter]
    fn signs(&self) -> (i32, i32) {
        (
            self.log.outcome_a.sign.value() as i32,
            self.log.outcome_b.sign.value() as i32,
        )
    }

    #[getter]
    fn reduction_point(&self) -> Option<Tuple4> {
        self.log.reduction_point.map(tuple)
    }

    #[getter]
    fn decisions(&self) -> (Tuple4, Tuple4) {
        (tuple(self.log.decision_a), tuple(self.log.decision_b))
    }

    /// Epoch boundaries (reduction, first decision, second decision) in the
    /// frame of rapidity `zeta`.
    #[pyo3(signature = (zeta=0.0))]
    fn boundaries(&self, zeta: f64) -> PyResult<Option<(f64, f64, f64)>> {
        match &self.log.timeline {
            None => Ok(None),
            Some(tl) => {
                let b = tl.in_frame(zeta).boundaries().map_err(py_err)?;
                Ok(Some((b.reduction, b.first, b.second)))
            }
        }
    }

    fn to_text(&self) -> PyResult<String> {
        self.log.to_text().map_err(py_err)
    }
}

#[pymodule]
#[pyo3(name = "blcsim")]
fn blcsim_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(boost, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_boost, m)?)?;
    m.add_function(wrap_pyfunction!(interval, m)?)?;
    m.add_function(wrap_pyfunction!(rapidity_from_beta, m)?)?;
    m.add_function(wrap_pyfunction!(proper_time_between, m)?)?;
    m.add_function(wrap_pyfunction!(worldline_event, m)?)?;
    m.add_function(wrap_pyfunction!(derive_source, m)?)?;
    m.add_function(wrap_pyfunction!(consistency_check, m)?)?;
    m.add_function(wrap_pyfunction!(inconsistency_scan, m)?)?;
    m.add_function(wrap_pyfunction!(blc_slope_limit, m)?)?;
    m.add_function(wrap_pyfunction!(decide_order, m)?)?;
    m.add_function(wrap_pyfunction!(singlet, m)?)?;
    m.add_function(wrap_pyfunction!(collapse_singlet, m)?)?;
    m.add_function(wrap_pyfunction!(chsh_value, m)?)?;
    m.add_class::<Scenario>()?;
    m.add_class::<TrialResult>()?;
    Ok(())
}
