//! Piecewise wave function of the pair between emission and both decisions.
//!
//! The first decider's reduction surface cuts the other branch at a
//! reduction point (SB when B decides first). From there on the pair is a
//! product: the first branch carries the partial overlap of the entangled
//! state with the reduced factor until its own decision, after which it
//! carries the measured eigenstate; the second branch carries the reduced
//! factor until its decision and the measured eigenstate afterwards.

use super::spinor::{eigenvector, Sign, Spinor};
use super::state::{collapse_state, intermediate_state, StateVector};
use crate::error::{Error, Result};
use crate::kinematics::{Axis, Party};
use crate::minkowski::{boost, Boost, Event};
use std::fmt;

/// A measured result on one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinResult {
    pub axis: Axis,
    pub sign: Sign,
}

impl SpinResult {
    pub fn new(axis: Axis, sign: Sign) -> Self {
        SpinResult { axis, sign }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// Partial overlap with the other branch's reduced factor.
    Intermediate,
    /// Fixed by the other branch's reduction (|ψ_A^k⟩ when B decides first).
    Reduced,
    /// Eigenstate of the branch's own measurement.
    Measured,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchFactor {
    pub party: Party,
    pub kind: FactorKind,
    pub spinor: Spinor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveState {
    Entangled(StateVector),
    Product { b: BranchFactor, a: BranchFactor },
}

impl WaveState {
    pub fn factor(&self, party: Party) -> Option<&BranchFactor> {
        match self {
            WaveState::Entangled(_) => None,
            WaveState::Product { b, a } => Some(if party == Party::A { a } else { b }),
        }
    }

    /// Same structure, factor kinds and rays.
    pub fn same_content(&self, other: &WaveState, tol: f64) -> bool {
        match (self, other) {
            (WaveState::Entangled(x), WaveState::Entangled(y)) => x.same_ray(y, tol),
            (WaveState::Product { b: b1, a: a1 }, WaveState::Product { b: b2, a: a2 }) => {
                b1.kind == b2.kind
                    && a1.kind == a2.kind
                    && b1.spinor.same_ray(&b2.spinor, tol)
                    && a1.spinor.same_ray(&a2.spinor, tol)
            }
            _ => false,
        }
    }

    /// Full two-spin state vector of this epoch.
    pub fn state_vector(&self) -> Result<StateVector> {
        match self {
            WaveState::Entangled(s) => Ok(*s),
            WaveState::Product { b, a } => StateVector::product(&b.spinor, &a.spinor),
        }
    }
}

impl fmt::Display for WaveState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = |s: &Spinor| {
            let c = s.canonical().unwrap_or(*s);
            format!(
                "({:.6}{:+.6}i)|+> + ({:.6}{:+.6}i)|->",
                c.0[0].re, c.0[0].im, c.0[1].re, c.0[1].im
            )
        };
        match self {
            WaveState::Entangled(s) => write!(f, "entangled {}", s.canonical()),
            WaveState::Product { b, a } => write!(
                f,
                "B:{:?}[{}] x A:{:?}[{}]",
                b.kind,
                sp(&b.spinor),
                a.kind,
                sp(&a.spinor)
            ),
        }
    }
}

/// One interval of frame time with constant wave-function structure.
#[derive(Debug, Clone, PartialEq)]
pub struct Epoch {
    pub start: Option<f64>,
    pub end: Option<f64>,
    pub state: WaveState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunctionTimeline {
    /// Rapidity of the frame in which times are reported (lab = 0).
    pub frame_zeta: f64,
    pub first: Party,
    /// Lab-frame events: reduction point on the second branch, first and
    /// second decisions.
    pub reduction_point: Event,
    pub first_decision: Event,
    pub second_decision: Event,
    pub entangled: StateVector,
    pub intermediate: Spinor,
    pub first_measured: Spinor,
    pub second_reduced: Spinor,
    pub second_measured: Spinor,
    pub first_result: SpinResult,
    pub second_result: SpinResult,
}

/// Frame times of the three boundaries, in the timeline's frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundaries {
    pub reduction: f64,
    pub first: f64,
    pub second: f64,
}

/// Assembles the piecewise wave function.
///
/// `first` decides at `first_decision` with result `k`; its surface cut the
/// other branch at `reduction_point`; the other detector decides at
/// `second_decision` with result `l`. Events are lab-frame.
pub fn build_timeline(
    psi_s: &StateVector,
    first: Party,
    reduction_point: Event,
    first_decision: Event,
    second_decision: Event,
    k: SpinResult,
    l: SpinResult,
) -> Result<WaveFunctionTimeline> {
    if !(reduction_point.t < first_decision.t && reduction_point.t < second_decision.t) {
        return Err(Error::Timeline(format!(
            "reduction point at t={} must precede both decisions (t={}, t={})",
            reduction_point.t, first_decision.t, second_decision.t
        )));
    }
    let second = first.other();
    let collapsed = collapse_state(psi_s, first, &k.axis, k.sign)?;
    let first_measured = collapsed.factor(first)?;
    let second_reduced = collapsed.factor(second)?;
    let intermediate = intermediate_state(psi_s, second, &second_reduced)?;
    let second_measured = eigenvector(&l.axis, l.sign);
    if second_measured.inner(&second_reduced).norm_sqr() <= 1e-24 {
        return Err(Error::ImpossibleOutcome(format!(
            "{second} cannot obtain {} after {first}'s reduction",
            l.sign
        )));
    }
    Ok(WaveFunctionTimeline {
        frame_zeta: 0.0,
        first,
        reduction_point,
        first_decision,
        second_decision,
        entangled: *psi_s,
        intermediate,
        first_measured,
        second_reduced,
        second_measured,
        first_result: k,
        second_result: l,
    })
}

impl WaveFunctionTimeline {
    /// The same timeline reported in the frame of rapidity `zeta`.
    pub fn in_frame(&self, zeta: f64) -> WaveFunctionTimeline {
        WaveFunctionTimeline {
            frame_zeta: zeta,
            ..self.clone()
        }
    }

    fn frame_time(&self, e: &Event) -> Result<f64> {
        Ok(boost(e, &Boost::new(self.frame_zeta))?.t)
    }

    pub fn boundaries(&self) -> Result<Boundaries> {
        Ok(Boundaries {
            reduction: self.frame_time(&self.reduction_point)?,
            first: self.frame_time(&self.first_decision)?,
            second: self.frame_time(&self.second_decision)?,
        })
    }

    fn factors(&self, before_first: bool, before_second: bool) -> WaveState {
        let first = BranchFactor {
            party: self.first,
            kind: if before_first {
                FactorKind::Intermediate
            } else {
                FactorKind::Measured
            },
            spinor: if before_first {
                self.intermediate
            } else {
                self.first_measured
            },
        };
        let second = BranchFactor {
            party: self.first.other(),
            kind: if before_second {
                FactorKind::Reduced
            } else {
                FactorKind::Measured
            },
            spinor: if before_second {
                self.second_reduced
            } else {
                self.second_measured
            },
        };
        match self.first {
            Party::B => WaveState::Product { b: first, a: second },
            Party::A => WaveState::Product { b: second, a: first },
        }
    }

    /// Wave function at frame time `t`; at a boundary the later epoch applies.
    pub fn state_at(&self, t: f64) -> Result<WaveState> {
        let b = self.boundaries()?;
        if t < b.reduction {
            return Ok(WaveState::Entangled(self.entangled));
        }
        Ok(self.factors(t < b.first, t < b.second))
    }

    /// The four epochs ordered by frame time.
    pub fn epochs(&self) -> Result<Vec<Epoch>> {
        let b = self.boundaries()?;
        let (lo, hi) = if b.first <= b.second {
            (b.first, b.second)
        } else {
            (b.second, b.first)
        };
        let cuts = [None, Some(b.reduction), Some(lo), Some(hi), None];
        let mut out = Vec::with_capacity(4);
        for w in cuts.windows(2) {
            let (start, end) = (w[0], w[1]);
            let probe = match (start, end) {
                (None, Some(e)) => e - 1.0,
                (Some(s), Some(e)) => 0.5 * (s + e),
                (Some(s), None) => s + 1.0,
                (None, None) => unreachable!(),
            };
            out.push(Epoch {
                start,
                end,
                state: self.state_at(probe)?,
            });
        }
        Ok(out)
    }
}
