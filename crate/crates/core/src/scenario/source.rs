//! Placement of the emission event and the two signal branches.

use super::config::{ScenarioConfig, SourceSpec};
use crate::error::{Error, Result};
use crate::kinematics::{proper_time_between, solve_quadratic, Party, SignalBranch};
use crate::minkowski::Event;

/// Emission event S with interval(S, a1) = τ_A² and interval(S, b2) = τ_B².
///
/// S sits in the past of both events, at the transverse midpoint of the two.
/// Subtracting the two hyperbola equations leaves a line in the (t, x¹)
/// plane; substituting it back gives a quadratic. When two solutions exist
/// the later emission is returned.
pub fn derive_source(a1: &Event, b2: &Event, tau_a: f64, tau_b: f64) -> Result<Event> {
    if !(tau_a >= 0.0 && tau_b >= 0.0) || !tau_a.is_finite() || !tau_b.is_finite() {
        return Err(Error::Domain(format!(
            "proper times must be finite and non-negative, got ({tau_a}, {tau_b})"
        )));
    }
    let (x2, x3) = (0.5 * (a1.x2 + b2.x2), 0.5 * (a1.x3 + b2.x3));
    let perp = (0.5 * (a1.x2 - b2.x2)).powi(2) + (0.5 * (a1.x3 - b2.x3)).powi(2);
    let (ta, xa, ka) = (a1.t, a1.x1, tau_a * tau_a + perp);
    let (tb, xb, kb) = (b2.t, b2.x1, tau_b * tau_b + perp);

    // α t + β x = γ
    let alpha = -2.0 * (ta - tb);
    let beta = 2.0 * (xa - xb);
    let gamma = ka - kb - (ta * ta - tb * tb) + (xa * xa - xb * xb);
    if alpha == 0.0 && beta == 0.0 {
        return Err(Error::Infeasible(format!(
            "{a1} and {b2} coincide in the (t, x1) plane"
        )));
    }

    let candidates: Vec<(f64, f64)> = if beta.abs() >= alpha.abs() {
        // x = p + q t
        let (p, q) = (gamma / beta, -alpha / beta);
        let d = p - xa;
        solve_quadratic(1.0 - q * q, -2.0 * ta - 2.0 * q * d, ta * ta - d * d - ka)
            .into_iter()
            .map(|t| (t, p + q * t))
            .collect()
    } else {
        // t = p + q x
        let (p, q) = (gamma / alpha, -beta / alpha);
        let d = p - ta;
        solve_quadratic(q * q - 1.0, 2.0 * (q * d + xa), d * d - xa * xa - ka)
            .into_iter()
            .map(|x| (p + q * x, x))
            .collect()
    };

    let scale = 1.0 + ta.abs().max(tb.abs()).max(xa.abs()).max(xb.abs());
    let tol = 1e-9 * scale * scale;
    let residual = |t: f64, x: f64, te: f64, xe: f64, k: f64| ((t - te).powi(2) - (x - xe).powi(2) - k).abs();
    candidates
        .into_iter()
        .filter(|&(t, x)| {
            t < ta && t < tb && residual(t, x, ta, xa, ka) < tol && residual(t, x, tb, xb, kb) < tol
        })
        .max_by(|p, q| p.0.total_cmp(&q.0))
        .map(|(t, x)| Event::new(t, x, x2, x3))
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "no emission event in the past of {a1} and {b2} has proper times ({tau_a}, {tau_b})"
            ))
        })
}

/// Source on the past light cones of both detection events, `margin` earlier.
pub fn lightlike_source(det_a: &Event, det_b: &Event, margin: f64) -> Result<Event> {
    let mut s = derive_source(det_a, det_b, 0.0, 0.0)?;
    s.t -= margin;
    Ok(s)
}

/// Everything about a configuration that does not depend on the trial.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedGeometry {
    pub source: Event,
    pub detection_a: Event,
    pub detection_b: Event,
    /// Events at the nominal decision times (no jitter).
    pub nominal_a: Event,
    pub nominal_b: Event,
    /// Proper times from S to the nominal decision events.
    pub tau_a: f64,
    pub tau_b: f64,
    pub branch_a: SignalBranch,
    pub branch_b: SignalBranch,
}

impl ResolvedGeometry {
    pub fn branch(&self, party: Party) -> &SignalBranch {
        match party {
            Party::A => &self.branch_a,
            Party::B => &self.branch_b,
        }
    }

    /// Speed of the signal on each branch, in units of c.
    pub fn signal_speeds(&self) -> (f64, f64) {
        (self.branch_a.speed(), self.branch_b.speed())
    }
}

/// Places S and both branches for `cfg`.
pub fn resolve_geometry(cfg: &ScenarioConfig) -> Result<ResolvedGeometry> {
    let (da, db) = (&cfg.detector_a, &cfg.detector_b);
    let detection_a = da.detection_event();
    let detection_b = db.detection_event();
    let nominal_a = da.event_at(da.nominal_decision_time());
    let nominal_b = db.event_at(db.nominal_decision_time());
    let source = match cfg.source {
        SourceSpec::Explicit(e) => e,
        SourceSpec::Derived { tau_a, tau_b } => derive_source(&nominal_a, &nominal_b, tau_a, tau_b)?,
        SourceSpec::Lightlike { margin } => lightlike_source(&detection_a, &detection_b, margin)?,
    };
    let branch_a = SignalBranch::new(source, detection_a, "S-A")?;
    let branch_b = SignalBranch::new(source, detection_b, "S-B")?;
    let tau_a = proper_time_between(&source, &nominal_a)?;
    let tau_b = proper_time_between(&source, &nominal_b)?;
    let geometry = ResolvedGeometry {
        source,
        detection_a,
        detection_b,
        nominal_a,
        nominal_b,
        tau_a,
        tau_b,
        branch_a,
        branch_b,
    };
    if let Some(v) = cfg.signal_speed {
        let (sa, sb) = geometry.signal_speeds();
        if (sa - v).abs() > 1e-6 || (sb - v).abs() > 1e-6 {
            return Err(Error::semantic(
                "source.signal_speed",
                format!("{v} does not match the branch speeds ({sa:.6}, {sb:.6})"),
            ));
        }
    }
    Ok(geometry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Worldline;
    use crate::minkowski::interval;
    use proptest::prelude::*;

    fn figure_events() -> (Event, Event) {
        (Event::planar(-1.0, 0.0), Worldline::new(0.5).unwrap().at_rest_time(-0.933))
    }

    /// Damped Newton on both interval equations, started well in the past.
    fn newton_oracle(a1: &Event, b2: &Event, tau_a: f64, tau_b: f64, start: (f64, f64)) -> (f64, f64) {
        let (mut t, mut x) = start;
        for _ in 0..200 {
            let f1 = (t - a1.t).powi(2) - (x - a1.x1).powi(2) - tau_a * tau_a;
            let f2 = (t - b2.t).powi(2) - (x - b2.x1).powi(2) - tau_b * tau_b;
            let (j11, j12) = (2.0 * (t - a1.t), -2.0 * (x - a1.x1));
            let (j21, j22) = (2.0 * (t - b2.t), -2.0 * (x - b2.x1));
            let det = j11 * j22 - j12 * j21;
            let dt = (f1 * j22 - f2 * j12) / det;
            let dx = (j11 * f2 - j21 * f1) / det;
            t -= 0.5 * dt;
            x -= 0.5 * dx;
        }
        (t, x)
    }

    #[test]
    fn figure_one_source() {
        let (a1, b2) = figure_events();
        assert!((b2.t + 1.052).abs() < 5e-4 && (b2.x1 + 0.486).abs() < 5e-4);
        let s = derive_source(&a1, &b2, 0.8, 0.664).unwrap();
        assert!((s.t + 1.809).abs() < 0.005, "{s}");
        assert!((s.x1 + 0.122).abs() < 0.005, "{s}");
        assert!((interval(&s, &a1).s_squared.sqrt() - 0.8).abs() < 1e-9);
        assert!((interval(&s, &b2).s_squared.sqrt() - 0.664).abs() < 1e-9);
        let (t, x) = newton_oracle(&a1, &b2, 0.8, 0.664, (-1.7, -0.1));
        assert!((s.t - t).abs() < 1e-9 && (s.x1 - x).abs() < 1e-9);
    }

    #[test]
    fn null_targets_give_light_cone_points() {
        let (a1, b2) = figure_events();
        let s = derive_source(&a1, &b2, 0.0, 0.0).unwrap();
        // intersection of t = −1 + x and t = t_B2 − (x − x_B2)
        let x = 0.5 * (b2.t + b2.x1 + 1.0);
        assert!((s.x1 - x).abs() < 1e-12 && (s.t - (x - 1.0)).abs() < 1e-12, "{s}");
        let s = derive_source(&a1, &b2, 0.0, 0.664).unwrap();
        assert!(interval(&s, &a1).s_squared.abs() < 1e-9);
        assert!(s.t < b2.t);
    }

    #[test]
    fn infeasible_proper_times() {
        let a1 = Event::planar(0.0, 0.0);
        let b2 = Event::planar(1.0, 0.0);
        assert!(matches!(derive_source(&a1, &b2, 5.0, 0.1), Err(Error::Infeasible(_))));
        assert!(matches!(derive_source(&a1, &a1, 0.5, 0.5), Err(Error::Infeasible(_))));
        assert!(matches!(derive_source(&a1, &b2, -1.0, 0.1), Err(Error::Domain(_))));
        // feasible when the later event has the larger proper time
        let s = derive_source(&a1, &b2, 0.5, 2.0).unwrap();
        assert!((interval(&s, &b2).s_squared - 4.0).abs() < 1e-9);
    }

    #[test]
    fn transverse_offsets_are_split_evenly() {
        let a1 = Event::new(-1.0, 0.0, 0.3, 0.0);
        let b2 = Event::new(-1.0, 1.0, -0.3, 0.2);
        let s = derive_source(&a1, &b2, 0.7, 0.9).unwrap();
        assert_eq!((s.x2, s.x3), (0.0, 0.1));
        assert!((interval(&s, &a1).s_squared - 0.49).abs() < 1e-9);
        assert!((interval(&s, &b2).s_squared - 0.81).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn solutions_satisfy_both_intervals(
            t0 in -3.0..0.0f64, x0 in -2.0..2.0f64,
            ta in 0.1..2.0f64, xa in -1.5..1.5f64, tb in 0.1..2.0f64, xb in -1.5..1.5f64,
        ) {
            // build the events forward from a known source so a solution exists
            prop_assume!(xa.abs() < ta && xb.abs() < tb);
            let s0 = Event::planar(t0, x0);
            let a1 = Event::planar(t0 + ta, x0 + xa);
            let b2 = Event::planar(t0 + tb, x0 + xb);
            let tau_a = (ta * ta - xa * xa).sqrt();
            let tau_b = (tb * tb - xb * xb).sqrt();
            prop_assume!((a1.t - b2.t).abs() > 1e-3 || (a1.x1 - b2.x1).abs() > 1e-3);
            let s = derive_source(&a1, &b2, tau_a, tau_b).unwrap();
            prop_assert!((interval(&s, &a1).s_squared - tau_a * tau_a).abs() < 1e-8);
            prop_assert!((interval(&s, &b2).s_squared - tau_b * tau_b).abs() < 1e-8);
            prop_assert!(s.t < a1.t && s.t < b2.t);
            // the later of the solutions is returned
            prop_assert!(s.t >= s0.t - 1e-9);
        }
    }
}
