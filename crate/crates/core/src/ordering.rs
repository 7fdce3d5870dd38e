//! Which detector reduces the pair first.
//!
//! Detectors are ordered by the proper times their signals spent travelling
//! from the source. When the two proper times agree within the detectors'
//! response uncertainties, the order is drawn at random.

use crate::error::Result;
use crate::kinematics::{proper_time_between, Detector, Party};
use crate::minkowski::Event;
use crate::rng::seeded_rng;
use rand::Rng;

/// Proper times from `source` to A's and B's detection events.
pub fn proper_times(source: &Event, a1: &Event, b2: &Event) -> Result<(f64, f64)> {
    Ok((proper_time_between(source, a1)?, proper_time_between(source, b2)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderDecision {
    pub first: Party,
    /// True when [τ_A ± Δτ_A] and [τ_B ± Δτ_B] intersect.
    pub overlap: bool,
    pub p_a_first: f64,
}

/// Probability that A reduces first under the overlap rule.
///
/// Disjoint uncertainty intervals give 0 or 1. Otherwise the leader (smaller
/// τ) wins with 1/2 + |τ_A − τ_B| / (2(Δτ_A + Δτ_B)), which reaches 1
/// exactly where the intervals stop overlapping.
pub fn p_a_first(tau_a: f64, tau_b: f64, dtau_a: f64, dtau_b: f64) -> f64 {
    let gap = tau_b - tau_a;
    let width = dtau_a + dtau_b;
    if gap.abs() > width {
        return if gap > 0.0 { 1.0 } else { 0.0 };
    }
    if width <= 0.0 {
        return 0.5;
    }
    (0.5 + gap / (2.0 * width)).clamp(0.0, 1.0)
}

/// Orders the two decisions, drawing from `rng` only when the intervals overlap.
pub fn decide_order_with<R: Rng + ?Sized>(
    tau_a: f64,
    tau_b: f64,
    dtau_a: f64,
    dtau_b: f64,
    rng: &mut R,
) -> OrderDecision {
    let overlap = (tau_a - tau_b).abs() <= dtau_a + dtau_b;
    let p_a = p_a_first(tau_a, tau_b, dtau_a, dtau_b);
    let first = if !overlap {
        if tau_a < tau_b {
            Party::A
        } else {
            Party::B
        }
    } else {
        // draw for the leader so that swapping the arguments swaps the result
        let a_leads = (tau_a, dtau_a) <= (tau_b, dtau_b);
        let p_leader = if a_leads { p_a } else { 1.0 - p_a };
        let leader_wins = rng.random::<f64>() < p_leader;
        match (a_leads, leader_wins) {
            (true, true) | (false, false) => Party::A,
            _ => Party::B,
        }
    };
    OrderDecision {
        first,
        overlap,
        p_a_first: p_a,
    }
}

pub fn decide_order(tau_a: f64, tau_b: f64, dtau_a: f64, dtau_b: f64, rng_seed: u64) -> OrderDecision {
    decide_order_with(tau_a, tau_b, dtau_a, dtau_b, &mut seeded_rng(rng_seed))
}

/// Sharp decision time inside the response window (rest frame).
///
/// Centred on `t_start + pre_decision` and spread uniformly over `jitter`
/// times the largest symmetric interval around it that fits in the window.
pub fn sample_sharp_time_with<R: Rng + ?Sized>(d: &Detector, rng: &mut R) -> f64 {
    let nominal = d.nominal_decision_time();
    if d.jitter == 0.0 {
        return nominal;
    }
    let room = d.pre_decision.min(d.dt_window - d.pre_decision);
    let half = d.jitter * room;
    nominal + half * (2.0 * rng.random::<f64>() - 1.0)
}

pub fn sample_sharp_time(d: &Detector, rng_seed: u64) -> f64 {
    sample_sharp_time_with(d, &mut seeded_rng(rng_seed))
}

/// Proper times, order and sharp decision times of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionSchedule {
    pub first: Party,
    /// Sharp time of the first decider, in its rest frame.
    pub tbar_first: f64,
    pub tbar_second: f64,
    pub tau_a: f64,
    pub tau_b: f64,
    pub overlap: bool,
}

impl DecisionSchedule {
    pub fn tbar(&self, party: Party) -> f64 {
        if party == self.first {
            self.tbar_first
        } else {
            self.tbar_second
        }
    }
}

/// Draws sharp times for both detectors, then the order. Response window
/// lengths serve as the proper-time uncertainties.
pub fn schedule_decisions<R: Rng + ?Sized>(
    da: &Detector,
    db: &Detector,
    tau_a: f64,
    tau_b: f64,
    rng: &mut R,
) -> DecisionSchedule {
    let tbar_a = sample_sharp_time_with(da, rng);
    let tbar_b = sample_sharp_time_with(db, rng);
    let order = decide_order_with(tau_a, tau_b, da.dt_window, db.dt_window, rng);
    let (tbar_first, tbar_second) = match order.first {
        Party::A => (tbar_a, tbar_b),
        Party::B => (tbar_b, tbar_a),
    };
    DecisionSchedule {
        first: order.first,
        tbar_first,
        tbar_second,
        tau_a,
        tau_b,
        overlap: order.overlap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{Axis, Worldline};
    use proptest::prelude::*;

    #[test]
    fn figure_one_order() {
        let o = decide_order(0.800, 0.664, 0.01, 0.01, 1);
        assert_eq!(o.first, Party::B);
        assert!(!o.overlap);
        for seed in 0..50 {
            assert_eq!(decide_order(0.800, 0.664, 0.01, 0.01, seed), o);
        }
        let o = decide_order(0.7, 0.9, 0.0, 0.0, 9);
        assert_eq!(o.first, Party::A);
        assert!(!o.overlap);
    }

    #[test]
    fn full_overlap_is_a_fair_coin() {
        let n = 100_000u64;
        let a_wins = (0..n)
            .filter(|&s| decide_order(0.7, 0.7, 0.05, 0.05, s).first == Party::A)
            .count();
        let f = a_wins as f64 / n as f64;
        assert!((f - 0.5).abs() < 0.01, "{f}");
        assert!(decide_order(0.7, 0.7, 0.05, 0.05, 0).overlap);
    }

    #[test]
    fn partial_overlap_favours_the_leader() {
        let p = p_a_first(0.65, 0.7, 0.05, 0.05);
        assert!((p - 0.75).abs() < 1e-12);
        let n = 40_000u64;
        let a_wins = (0..n)
            .filter(|&s| decide_order(0.65, 0.7, 0.05, 0.05, s).first == Party::A)
            .count();
        let f = a_wins as f64 / n as f64;
        assert!((f - 0.75).abs() < 0.015, "{f}");
        // continuous with the deterministic regime
        assert_eq!(p_a_first(0.5, 0.75, 0.125, 0.125), 1.0);
        assert!(p_a_first(0.5 + 1e-12, 0.75, 0.125, 0.125) > 0.999);
        assert_eq!(p_a_first(0.25, 0.75, 0.125, 0.125), 1.0);
    }

    fn window_detector(jitter: f64) -> Detector {
        Detector::single_axis(Party::A, Worldline::at_rest(), 0.0, 1.0, 0.4, Axis::Z)
            .unwrap()
            .with_jitter(jitter)
            .unwrap()
    }

    #[test]
    fn sharp_time_examples() {
        assert_eq!(sample_sharp_time(&window_detector(0.0), 3), 0.4);
        let d = window_detector(0.8);
        let mut rng = crate::rng::seeded_rng(17);
        for _ in 0..100_000 {
            let t = sample_sharp_time_with(&d, &mut rng);
            assert!(t > 0.0 && t < 1.0);
        }
        assert_eq!(sample_sharp_time(&d, 5), sample_sharp_time(&d, 5));
        assert_ne!(sample_sharp_time(&d, 5), sample_sharp_time(&d, 6));
    }

    #[test]
    fn lightlike_branch_has_zero_proper_time() {
        let src = Event::planar(0.0, 0.0);
        let (ta, tb) = proper_times(&src, &Event::planar(1.0, 1.0), &Event::planar(2.0, -1.0)).unwrap();
        assert_eq!(ta, 0.0);
        assert!((tb - 3f64.sqrt()).abs() < 1e-12);
        let (ta, _) = proper_times(&src, &src, &Event::planar(1.0, 0.0)).unwrap();
        assert_eq!(ta, 0.0);
        assert!(proper_times(&src, &Event::planar(1.0, 3.0), &Event::planar(1.0, 0.0)).is_err());
    }

    proptest! {
        #[test]
        fn swapping_arguments_swaps_the_winner(
            ta in 0.0..2.0f64, tb in 0.0..2.0f64, da in 0.0..0.5f64, db in 0.0..0.5f64, seed in any::<u64>()
        ) {
            prop_assume!((ta, da) != (tb, db));
            let o = decide_order(ta, tb, da, db, seed);
            let s = decide_order(tb, ta, db, da, seed);
            prop_assert_eq!(o.first, s.first.other());
            prop_assert_eq!(o.overlap, s.overlap);
            prop_assert!((o.p_a_first - (1.0 - s.p_a_first)).abs() < 1e-12);
        }

        #[test]
        fn disjoint_intervals_ignore_the_seed(
            ta in 0.0..2.0f64, gap in 0.01..1.0f64, da in 0.0..0.2f64, db in 0.0..0.2f64, s1 in any::<u64>(), s2 in any::<u64>()
        ) {
            let tb = ta + da + db + gap;
            prop_assert_eq!(decide_order(ta, tb, da, db, s1), decide_order(ta, tb, da, db, s2));
            prop_assert_eq!(decide_order(ta, tb, da, db, s1).first, Party::A);
        }

        #[test]
        fn sharp_times_never_coincide(seed in any::<u64>()) {
            let d = window_detector(0.8);
            let mut rng = crate::rng::seeded_rng(seed);
            let t1 = sample_sharp_time_with(&d, &mut rng);
            let t2 = sample_sharp_time_with(&d, &mut rng);
            prop_assert!(t1 != t2);
        }
    }
}
