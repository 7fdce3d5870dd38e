//! Inertial detectors, their response windows, and signal branches.

use crate::error::{Error, Result};
use crate::minkowski::{boost, interval, Boost, Event, IntervalKind};
use std::fmt;

/// Which of the two measuring stations (and which tensor factor) is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    A,
    B,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::A => Party::B,
            Party::B => Party::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Party::A => "A",
            Party::B => "B",
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Unit 3-vector giving a spin measurement direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis([f64; 3]);

impl Axis {
    pub const Z: Axis = Axis([0.0, 0.0, 1.0]);
    pub const X: Axis = Axis([1.0, 0.0, 0.0]);
    pub const Y: Axis = Axis([0.0, 1.0, 0.0]);

    /// Accepts only vectors whose norm is 1 within 1e-9.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "axis ({}, {}, {}) is not a unit vector (norm {norm})",
                v[0], v[1], v[2]
            )));
        }
        Ok(Axis(v))
    }

    /// Normalizes an arbitrary non-zero vector.
    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Domain("cannot normalize a zero vector".into()));
        }
        Ok(Axis([v[0] / norm, v[1] / norm, v[2] / norm]))
    }

    /// Direction in the x-z plane at `theta` radians from ẑ towards x̂.
    pub fn in_xz_plane(theta: f64) -> Self {
        Axis([theta.sin(), 0.0, theta.cos()])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Axis) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }
}

/// Inertial trajectory through the spatial origin of the x¹ axis at t = 0.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Worldline {
    pub zeta: f64,
    /// Transverse position (x², x³); the x¹ component is always zero.
    pub offset: [f64; 2],
}

impl Worldline {
    pub fn new(zeta: f64) -> Result<Self> {
        Self::with_offset(zeta, [0.0, 0.0])
    }

    pub fn with_offset(zeta: f64, offset: [f64; 2]) -> Result<Self> {
        if !zeta.is_finite() || zeta.tanh().abs() >= 1.0 {
            return Err(Error::Domain(format!("worldline rapidity {zeta} is not subluminal")));
        }
        if !offset.iter().all(|o| o.is_finite()) {
            return Err(Error::Domain("worldline offset must be finite".into()));
        }
        Ok(Worldline { zeta, offset })
    }

    pub fn at_rest() -> Self {
        Worldline::default()
    }

    pub fn velocity(&self) -> f64 {
        self.zeta.tanh()
    }

    /// Lab event at coordinate time `t`.
    pub fn position_at(&self, t: f64) -> Event {
        position_at(self, t)
    }

    /// Lab event reached after rest-frame time `tau` (measured from t = 0).
    pub fn at_rest_time(&self, tau: f64) -> Event {
        Event::new(
            tau * self.zeta.cosh(),
            tau * self.zeta.sinh(),
            self.offset[0],
            self.offset[1],
        )
    }

    /// Time coordinate of `e` in this worldline's rest frame.
    pub fn rest_time_of(&self, e: &Event) -> Result<f64> {
        Ok(boost(e, &self.rest_boost())?.t)
    }

    /// Boost from the lab frame into this worldline's rest frame.
    pub fn rest_boost(&self) -> Boost {
        Boost::new(self.zeta)
    }
}

/// Lab event on `w` at coordinate time `t`.
pub fn position_at(w: &Worldline, t: f64) -> Event {
    Event::new(t, t * w.zeta.tanh(), w.offset[0], w.offset[1])
}

/// Proper time elapsed along the straight segment from `e1` to `e2`.
pub fn proper_time_between(e1: &Event, e2: &Event) -> Result<f64> {
    let c = interval(e1, e2);
    match c.kind {
        IntervalKind::Spacelike => Err(Error::Domain(format!(
            "events {e1} and {e2} are spacelike separated (s² = {})",
            c.s_squared
        ))),
        IntervalKind::Lightlike => Ok(0.0),
        IntervalKind::Timelike => Ok(c.s_squared.sqrt()),
    }
}

/// A measuring station: worldline, response window and axis settings.
///
/// Window times are in the detector's rest frame. A signal arrives at
/// `t_start`; the sharp decision happens `pre_decision` later unless the
/// decision time is jittered (see [`crate::ordering::sample_sharp_time`]).
#[derive(Debug, Clone, PartialEq)]
pub struct Detector {
    pub id: String,
    pub party: Party,
    pub worldline: Worldline,
    pub t_start: f64,
    pub dt_window: f64,
    pub pre_decision: f64,
    pub axes: Vec<Axis>,
    pub axis_weights: Vec<f64>,
    /// Fraction of the admissible room around the nominal decision time
    /// over which the sharp time is spread. Zero disables jitter.
    pub jitter: f64,
}

pub const DEFAULT_JITTER: f64 = 0.8;

impl Detector {
    pub fn new(
        party: Party,
        worldline: Worldline,
        t_start: f64,
        dt_window: f64,
        pre_decision: f64,
        axes: Vec<Axis>,
        axis_weights: Vec<f64>,
    ) -> Result<Self> {
        let d = Detector {
            id: party.label().to_string(),
            party,
            worldline,
            t_start,
            dt_window,
            pre_decision,
            axes,
            axis_weights,
            jitter: DEFAULT_JITTER,
        };
        d.validate()?;
        Ok(d)
    }

    /// Detector with a single axis and weight 1.
    pub fn single_axis(
        party: Party,
        worldline: Worldline,
        t_start: f64,
        dt_window: f64,
        pre_decision: f64,
        axis: Axis,
    ) -> Result<Self> {
        Self::new(party, worldline, t_start, dt_window, pre_decision, vec![axis], vec![1.0])
    }

    pub fn with_jitter(mut self, jitter: f64) -> Result<Self> {
        self.jitter = jitter;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let key = |k: &str| format!("detector.{}.{k}", self.id);
        if !self.t_start.is_finite() {
            return Err(Error::semantic(key("t_start"), "must be finite"));
        }
        if !(self.dt_window > 0.0) || !self.dt_window.is_finite() {
            return Err(Error::semantic(key("window"), "must be a positive duration"));
        }
        if !(self.pre_decision > 0.0 && self.pre_decision < self.dt_window) {
            return Err(Error::semantic(
                key("pre_decision"),
                format!("must lie strictly inside (0, {})", self.dt_window),
            ));
        }
        if !(0.0..1.0).contains(&self.jitter) {
            return Err(Error::semantic(key("jitter"), "must lie in [0, 1)"));
        }
        if self.axes.is_empty() {
            return Err(Error::semantic(key("axes"), "at least one axis is required"));
        }
        if self.axes.len() != self.axis_weights.len() {
            return Err(Error::semantic(
                key("weights"),
                format!("{} weights for {} axes", self.axis_weights.len(), self.axes.len()),
            ));
        }
        for a in &self.axes {
            Axis::new(a.components()).map_err(|e| Error::semantic(key("axes"), e.to_string()))?;
        }
        if self.axis_weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::semantic(key("weights"), "weights must be non-negative"));
        }
        let total: f64 = self.axis_weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::semantic(key("weights"), format!("weights sum to {total}, not 1")));
        }
        Ok(())
    }

    pub fn window_end(&self) -> f64 {
        self.t_start + self.dt_window
    }

    /// Decision time without jitter, in the rest frame.
    pub fn nominal_decision_time(&self) -> f64 {
        self.t_start + self.pre_decision
    }

    /// Lab event at which the signal reaches the detector.
    pub fn detection_event(&self) -> Event {
        self.worldline.at_rest_time(self.t_start)
    }

    /// Lab event on the worldline at rest-frame time `tbar`.
    pub fn event_at(&self, tbar: f64) -> Event {
        self.worldline.at_rest_time(tbar)
    }
}

/// Straight causal segment carrying one particle from the source to a detector.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalBranch {
    pub source: Event,
    pub detection: Event,
    pub label: String,
}

impl SignalBranch {
    pub fn new(source: Event, detection: Event, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if !(detection.t > source.t) {
            return Err(Error::Geometry(format!(
                "branch {label}: detection at t={} does not follow emission at t={}",
                detection.t, source.t
            )));
        }
        if !interval(&source, &detection).is_causal() {
            return Err(Error::Geometry(format!(
                "branch {label}: {source} and {detection} are spacelike separated"
            )));
        }
        Ok(SignalBranch {
            source,
            detection,
            label,
        })
    }

    pub fn proper_time(&self) -> f64 {
        proper_time_between(&self.source, &self.detection).unwrap_or(0.0)
    }

    /// Spatial speed along the branch in units of c.
    pub fn speed(&self) -> f64 {
        self.source.spatial_distance(&self.detection) / (self.detection.t - self.source.t)
    }

    pub fn is_lightlike(&self) -> bool {
        interval(&self.source, &self.detection).kind == IntervalKind::Lightlike
    }

    pub fn point_at(&self, s: f64) -> Event {
        self.source.lerp(&self.detection, s)
    }
}

/// Whether no signal can connect the two response windows.
///
/// `t_a` and `t_b` are lab-frame window start times; the rest-frame window
/// lengths are dilated into the lab frame. Positions are taken over the
/// whole windows and the smallest separation is used, so the predicate holds
/// only if it holds for every pairing of window instants.
pub fn spacelike_measurements(da: &Detector, db: &Detector, t_a: f64, t_b: f64) -> bool {
    let end_a = t_a + da.dt_window * da.worldline.zeta.cosh();
    let end_b = t_b + db.dt_window * db.worldline.zeta.cosh();
    let duration = end_a.max(end_b) - t_a.min(t_b);

    let (va, vb) = (da.worldline.velocity(), db.worldline.velocity());
    // x1 separation is affine in (s, u); its extremes sit at the corners.
    let corners = [
        vb * t_b - va * t_a,
        vb * end_b - va * t_a,
        vb * t_b - va * end_a,
        vb * end_b - va * end_a,
    ];
    let lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_dx1 = if lo <= 0.0 && hi >= 0.0 {
        0.0
    } else {
        lo.abs().min(hi.abs())
    };
    let d2 = db.worldline.offset[0] - da.worldline.offset[0];
    let d3 = db.worldline.offset[1] - da.worldline.offset[1];
    let distance = (min_dx1 * min_dx1 + d2 * d2 + d3 * d3).sqrt();
    duration < distance
}

/// Earliest event on `w` after lab time `after` reached by a light signal
/// emitted at `source`.
pub fn lightlike_branch(source: &Event, w: &Worldline, after: f64) -> Result<Event> {
    let v = w.velocity();
    let d2 = w.offset[0] - source.x2;
    let d3 = w.offset[1] - source.x3;
    let perp2 = d2 * d2 + d3 * d3;
    // (t − ts)² − (v t − xs)² − perp² = 0
    let a = 1.0 - v * v;
    let b = -2.0 * (source.t - v * source.x1);
    let c = source.t * source.t - source.x1 * source.x1 - perp2;
    let roots = solve_quadratic(a, b, c);
    roots
        .into_iter()
        .filter(|t| *t > after && *t - source.t > 1e-10 * (1.0 + source.t.abs()))
        .fold(None, |best: Option<f64>, t| Some(best.map_or(t, |b| b.min(t))))
        .map(|t| position_at(w, t))
        .ok_or_else(|| {
            Error::Geometry(format!(
                "no forward light signal from {source} reaches the worldline after t={after}"
            ))
        })
}

/// Real roots of a·x² + b·x + c = 0, using the cancellation-free form.
pub(crate) fn solve_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return vec![];
    }
    if a.abs() <= 1e-14 * scale {
        if b == 0.0 {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // tangency up to rounding
        if disc > -1e-12 * (b * b).max(1e-300) {
            return vec![-b / (2.0 * a)];
        }
        return vec![];
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return vec![0.0];
    }
    let mut r = vec![q / a, c / q];
    r.sort_by(|x, y| x.partial_cmp(y).unwrap());
    r
}
