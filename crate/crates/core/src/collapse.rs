//! Collapse hypersurfaces and the frame-consistency of paired reductions.
//!
//! A reduction initiated at a decision event (the apex) spreads along a
//! hypersurface. Three shapes are supported: the instantaneous plane of the
//! decider's rest frame, a spacelike plane of fixed slope in that frame, and
//! the backward light-cone of the apex. Two detectors decide consistently
//! unless each of them decides before the other's surface reaches it, in
//! which case both would claim to act on the unreduced pair.

use crate::error::{Error, Result};
use crate::kinematics::{SignalBranch, Worldline};
use crate::kinematics::solve_quadratic;
use crate::minkowski::{boost, Boost, Event};
use rayon::prelude::*;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CollapsePolicy {
    /// The plane t′ = const of the decider's rest frame.
    Instantaneous,
    /// The plane t′ − t′ₐ = slope·(x′¹ − x′¹ₐ) in the decider's rest frame.
    TiltedPlane { slope: f64 },
    BackwardLightCone,
}

impl CollapsePolicy {
    pub fn tilted(slope: f64) -> Result<Self> {
        if !slope.is_finite() || slope.abs() >= 1.0 {
            return Err(Error::Domain(format!(
                "a spacelike plane needs |slope| < 1, got {slope}"
            )));
        }
        Ok(CollapsePolicy::TiltedPlane { slope })
    }

    pub fn validate(&self) -> Result<()> {
        if let CollapsePolicy::TiltedPlane { slope } = self {
            CollapsePolicy::tilted(*slope)?;
        }
        Ok(())
    }

    /// Slope of the plane, or `None` for the light-cone.
    pub fn plane_slope(&self) -> Option<f64> {
        match self {
            CollapsePolicy::Instantaneous => Some(0.0),
            CollapsePolicy::TiltedPlane { slope } => Some(*slope),
            CollapsePolicy::BackwardLightCone => None,
        }
    }

    /// Short form used by the CLI and in reports: `inst`, `plane:<s>`, `blc`.
    pub fn tag(&self) -> String {
        match self {
            CollapsePolicy::Instantaneous => "inst".into(),
            CollapsePolicy::TiltedPlane { slope } => format!("plane:{slope}"),
            CollapsePolicy::BackwardLightCone => "blc".into(),
        }
    }

    pub fn parse_tag(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inst" | "instantaneous" => Ok(CollapsePolicy::Instantaneous),
            "blc" | "backward_light_cone" => Ok(CollapsePolicy::BackwardLightCone),
            _ => {
                let rest = s
                    .strip_prefix("plane:")
                    .or_else(|| s.strip_prefix("tilted_plane:"))
                    .ok_or_else(|| Error::Domain(format!("unknown collapse policy `{s}`")))?;
                let slope: f64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad plane slope `{rest}`")))?;
                CollapsePolicy::tilted(slope)
            }
        }
    }
}

impl fmt::Display for CollapsePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseSurface {
    pub apex: Event,
    pub policy: CollapsePolicy,
    /// Rapidity of the deciding detector; plane orientation refers to its rest frame.
    pub decider_zeta: f64,
}

impl CollapseSurface {
    pub fn new(apex: Event, policy: CollapsePolicy, decider_zeta: f64) -> Self {
        CollapseSurface {
            apex,
            policy,
            decider_zeta,
        }
    }

    /// Signed position of `e` relative to the surface: zero on it, positive
    /// on the side containing the apex's causal past.
    pub fn side(&self, e: &Event) -> Result<f64> {
        match self.policy.plane_slope() {
            Some(slope) => {
                let b = Boost::new(self.decider_zeta);
                let p = boost(e, &b)?;
                let a = boost(&self.apex, &b)?;
                Ok((a.t - p.t) + slope * (p.x1 - a.x1))
            }
            None => Ok((self.apex.t - e.t) - self.apex.spatial_distance(e)),
        }
    }

    /// Parameters λ at which the line `origin + λ·direction` meets the surface.
    fn line_crossings(&self, origin: &Event, direction: &Event) -> Result<Vec<f64>> {
        match self.policy.plane_slope() {
            Some(_) => {
                // the side function is affine along the line
                let s0 = self.side(origin)?;
                let end = Event::new(
                    origin.t + direction.t,
                    origin.x1 + direction.x1,
                    origin.x2 + direction.x2,
                    origin.x3 + direction.x3,
                );
                let slope = self.side(&end)? - s0;
                if slope.abs() <= 1e-14 * (1.0 + s0.abs()) {
                    return Ok(vec![]);
                }
                Ok(vec![-s0 / slope])
            }
            None => {
                // (Δt)² − |Δx|² = 0 with Δ = apex − point, restricted to the past sheet
                let a = &self.apex;
                let d0 = [a.t - origin.t, a.x1 - origin.x1, a.x2 - origin.x2, a.x3 - origin.x3];
                let dv = [direction.t, direction.x1, direction.x2, direction.x3];
                let qa = dv[0] * dv[0] - dv[1] * dv[1] - dv[2] * dv[2] - dv[3] * dv[3];
                let qb = -2.0 * (d0[0] * dv[0] - d0[1] * dv[1] - d0[2] * dv[2] - d0[3] * dv[3]);
                let qc = d0[0] * d0[0] - d0[1] * d0[1] - d0[2] * d0[2] - d0[3] * d0[3];
                let scale = 1.0 + a.t.abs() + origin.t.abs();
                Ok(solve_quadratic(qa, qb, qc)
                    .into_iter()
                    .filter(|l| d0[0] - l * dv[0] >= -1e-12 * scale)
                    .collect())
            }
        }
    }
}

/// The event at which the surface crosses the worldline `w`.
///
/// For the light-cone this is the unique crossing of the past sheet; for a
/// plane, the unique crossing of the plane.
pub fn arrival_on_worldline(s: &CollapseSurface, w: &Worldline) -> Result<Event> {
    let origin = w.position_at(0.0);
    let direction = Event::new(1.0, w.velocity(), 0.0, 0.0);
    let roots = s.line_crossings(&origin, &direction)?;
    let t = match s.policy {
        CollapsePolicy::BackwardLightCone => roots.into_iter().fold(None, |acc: Option<f64>, r| {
            Some(acc.map_or(r, |a| a.min(r)))
        }),
        _ => roots.into_iter().next(),
    };
    let t = t.ok_or_else(|| {
        Error::Geometry(format!(
            "{} surface from {} never crosses the worldline with rapidity {}",
            s.policy, s.apex, w.zeta
        ))
    })?;
    let e = w.position_at(t);
    if !e.is_finite() {
        return Err(Error::Range("crossing time is not finite".into()));
    }
    Ok(e)
}

/// The point where the surface cuts a signal branch strictly between its
/// emission and its detection.
pub fn reduction_point_on_branch(s: &CollapseSurface, branch: &SignalBranch) -> Result<Event> {
    let direction = Event::new(
        branch.detection.t - branch.source.t,
        branch.detection.x1 - branch.source.x1,
        branch.detection.x2 - branch.source.x2,
        branch.detection.x3 - branch.source.x3,
    );
    const EDGE: f64 = 1e-12;
    s.line_crossings(&branch.source, &direction)?
        .into_iter()
        .filter(|l| *l > EDGE && *l < 1.0 - EDGE)
        .fold(None, |acc: Option<f64>, l| Some(acc.map_or(l, |a| a.min(l))))
        .map(|l| branch.point_at(l))
        .ok_or_else(|| {
            Error::Geometry(format!(
                "{} surface from {} does not cut branch {} between emission and detection",
                s.policy, s.apex, branch.label
            ))
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

impl Verdict {
    pub fn is_consistent(self) -> bool {
        self == Verdict::Consistent
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
        })
    }
}

/// Decision and arrival times of a paired measurement, each in the rest
/// frame of the detector it refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyDetail {
    pub verdict: Verdict,
    /// A's decision (A frame).
    pub a1: f64,
    /// Arrival of B's surface at A (A frame).
    pub a2: f64,
    /// Arrival of A's surface at B (B frame).
    pub b1: f64,
    /// B's decision (B frame).
    pub b2: f64,
}

impl ConsistencyDetail {
    /// True when A decides no later than B's reduction reaches it.
    pub fn a_sees_itself_first(&self) -> bool {
        self.a2 >= self.a1
    }

    pub fn b_sees_itself_first(&self) -> bool {
        self.b1 >= self.b2
    }
}

/// Consistency of two decisions on arbitrary inertial worldlines.
///
/// The pair is inconsistent when both detectors decide before (or exactly
/// when) the other's reduction surface arrives: x⁰_A2 ≥ x⁰_A1 and
/// x′⁰_B1 ≥ x′⁰_B2. Equality counts as inconsistent.
pub fn consistency_between(
    wa: &Worldline,
    decision_a: &Event,
    wb: &Worldline,
    decision_b: &Event,
    policy: CollapsePolicy,
) -> Result<ConsistencyDetail> {
    policy.validate()?;
    let surf_a = CollapseSurface::new(*decision_a, policy, wa.zeta);
    let surf_b = CollapseSurface::new(*decision_b, policy, wb.zeta);
    let a1 = wa.rest_time_of(decision_a)?;
    let b2 = wb.rest_time_of(decision_b)?;
    let b1 = wb.rest_time_of(&arrival_on_worldline(&surf_a, wb)?)?;
    let a2 = wa.rest_time_of(&arrival_on_worldline(&surf_b, wa)?)?;
    let inconsistent = a2 >= a1 && b1 >= b2;
    Ok(ConsistencyDetail {
        verdict: if inconsistent {
            Verdict::Inconsistent
        } else {
            Verdict::Consistent
        },
        a1,
        a2,
        b1,
        b2,
    })
}

/// Consistency check with A at rest and B moving with rapidity `zeta`.
///
/// Both decisions are given in A's frame; each worldline passes through
/// the transverse position of its decision.
pub fn consistency_check(
    decision_a: &Event,
    decision_b: &Event,
    policy: CollapsePolicy,
    zeta: f64,
) -> Result<ConsistencyDetail> {
    let wa = Worldline::with_offset(0.0, [decision_a.x2, decision_a.x3])?;
    let wb = Worldline::with_offset(zeta, [decision_b.x2, decision_b.x3])?;
    consistency_between(&wa, decision_a, &wb, decision_b, policy)
}

/// Latest event on B's worldline (rapidity `zeta`) that A's reduction may
/// reach without allowing an inconsistent partner decision: rest-frame time
/// x⁰_A1, i.e. lab time x⁰_A1·cosh ζ.
pub fn max_consistent_arrival(apex: &Event, zeta: f64) -> Event {
    Event::new(apex.t * zeta.cosh(), apex.t * zeta.sinh(), apex.x2, apex.x3)
}

/// Whether the surface of a decider reaches the other worldline strictly
/// before the consistency bound (rest time of the other < rest time of the
/// apex in the decider's frame).
pub fn arrival_within_bound(
    surface: &CollapseSurface,
    decider: &Worldline,
    other: &Worldline,
) -> Result<bool> {
    let apex_time = decider.rest_time_of(&surface.apex)?;
    let arrival = arrival_on_worldline(surface, other)?;
    Ok(other.rest_time_of(&arrival)? < apex_time)
}

/// (cosh ζ − 1)/sinh ζ for each ζ: the slope a plane through the apex needs
/// to meet the consistency bound at rapidity ζ.
pub fn blc_slope_limit(zetas: &[f64]) -> Result<Vec<f64>> {
    zetas
        .iter()
        .map(|&z| {
            if !(z > 0.0) || !z.is_finite() {
                Err(Error::Domain(format!(
                    "slope limit needs a positive rapidity, got {z}"
                )))
            } else {
                // identity (cosh ζ − 1)/sinh ζ = tanh(ζ/2), stable for large ζ
                Ok((0.5 * z).tanh())
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanCell {
    pub zeta: f64,
    pub t_a1: f64,
    /// Verdict of the paired decisions (B2 placed at B-rest time x⁰_A1).
    pub paired: Verdict,
    /// A's surface reaches B before the bound.
    pub bound_a: bool,
    /// B's surface reaches A before the bound.
    pub bound_b: bool,
    /// Set when a surface never crossed the other worldline.
    pub geometry_error: Option<String>,
}

impl ScanCell {
    pub fn verdict(&self) -> Verdict {
        if self.geometry_error.is_none() && self.paired.is_consistent() && self.bound_a && self.bound_b {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub policy: CollapsePolicy,
    pub zetas: Vec<f64>,
    pub times: Vec<f64>,
    /// Row-major over (zeta, time).
    pub cells: Vec<ScanCell>,
}

impl ScanReport {
    pub fn inconsistent(&self) -> Vec<&ScanCell> {
        self.cells
            .iter()
            .filter(|c| !c.verdict().is_consistent())
            .collect()
    }

    pub fn consistent_count(&self) -> usize {
        self.cells.iter().filter(|c| c.verdict().is_consistent()).count()
    }

    pub fn all_consistent(&self) -> bool {
        self.consistent_count() == self.cells.len()
    }

    pub fn fraction_consistent(&self) -> f64 {
        if self.cells.is_empty() {
            return 1.0;
        }
        self.consistent_count() as f64 / self.cells.len() as f64
    }

    /// Smallest rapidity with at least one inconsistent cell.
    pub fn first_violation_zeta(&self) -> Option<f64> {
        self.inconsistent()
            .into_iter()
            .map(|c| c.zeta)
            .fold(None, |acc: Option<f64>, z| Some(acc.map_or(z, |a| a.min(z))))
    }

    pub fn cell(&self, zeta_index: usize, time_index: usize) -> &ScanCell {
        &self.cells[zeta_index * self.times.len() + time_index]
    }
}

fn scan_cell(policy: CollapsePolicy, zeta: f64, t_a1: f64) -> ScanCell {
    let eval = || -> Result<ScanCell> {
        let wa = Worldline::at_rest();
        let wb = Worldline::new(zeta)?;
        let a1 = wa.at_rest_time(t_a1);
        let b2 = wb.at_rest_time(t_a1);
        let paired = consistency_between(&wa, &a1, &wb, &b2, policy)?.verdict;
        let bound_a = arrival_within_bound(&CollapseSurface::new(a1, policy, wa.zeta), &wa, &wb)?;
        let bound_b = arrival_within_bound(&CollapseSurface::new(b2, policy, wb.zeta), &wb, &wa)?;
        Ok(ScanCell {
            zeta,
            t_a1,
            paired,
            bound_a,
            bound_b,
            geometry_error: None,
        })
    };
    eval().unwrap_or_else(|e| ScanCell {
        zeta,
        t_a1,
        paired: Verdict::Inconsistent,
        bound_a: false,
        bound_b: false,
        geometry_error: Some(e.to_string()),
    })
}

/// Evaluates the paired arrangement on every (ζ, x⁰_A1) grid point.
///
/// B's decision sits at B-rest time x⁰_A1, the latest time at which A's
/// reduction may reach B. A cell is consistent when the pair is not
/// mutually first and both surfaces respect their arrival bounds.
pub fn inconsistency_scan(policy: CollapsePolicy, zetas: &[f64], times: &[f64]) -> ScanReport {
    let grid: Vec<(f64, f64)> = zetas
        .iter()
        .flat_map(|&z| times.iter().map(move |&t| (z, t)))
        .collect();
    let cells = grid
        .par_iter()
        .map(|&(z, t)| scan_cell(policy, z, t))
        .collect();
    ScanReport {
        policy,
        zetas: zetas.to_vec(),
        times: times.to_vec(),
        cells,
    }
}
