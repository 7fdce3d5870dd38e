//! Statistics over many trials.

use super::config::ScenarioConfig;
use super::source::resolve_geometry;
use super::trial::{fmt_num, run_trial_with};
use crate::error::{Error, Result};
use crate::kinematics::Party;
use crate::quantum::{born_probabilities, lhv_constraints_check, singlet, LhvReport, Outcome};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Estimated correlation E = ⟨s_A s_B⟩ for one pair of axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlator {
    pub value: f64,
    pub trials: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshEstimate {
    /// E(1,1) − E(1,2) + E(2,1) + E(2,2), axes numbered per detector.
    pub value: f64,
    pub standard_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub trials: u64,
    /// Joint counts keyed by (A outcome, B outcome).
    pub counts: BTreeMap<(Outcome, Outcome), u64>,
    /// Frequency of each single-detector outcome over all trials.
    pub marginals: BTreeMap<Outcome, f64>,
    /// Keyed by (A axis index, B axis index).
    pub correlators: BTreeMap<(usize, usize), Correlator>,
    /// Present when both detectors have exactly two axes.
    pub chsh: Option<ChshEstimate>,
    /// Constraint check on the Born tables of the source state.
    pub lhv: LhvReport,
    pub a_first: u64,
    pub consistent: u64,
    /// Trials whose reduction surface missed the other branch.
    pub reduction_misses: u64,
}

#[derive(Default)]
struct Tally {
    counts: BTreeMap<(Outcome, Outcome), u64>,
    a_first: u64,
    consistent: u64,
    misses: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, n) in other.counts {
            *self.counts.entry(k).or_insert(0) += n;
        }
        self.a_first += other.a_first;
        self.consistent += other.consistent;
        self.misses += other.misses;
        self
    }
}

/// Runs every trial of `cfg` in parallel. Only integer tallies are combined
/// across threads, so the result does not depend on scheduling.
pub fn run_ensemble(cfg: &ScenarioConfig) -> Result<EnsembleStats> {
    cfg.validate()?;
    let geometry = resolve_geometry(cfg)?;
    let tally = (0..cfg.trials)
        .into_par_iter()
        .try_fold(Tally::default, |mut t, i| -> Result<Tally> {
            let log = run_trial_with(cfg, &geometry, i)?;
            *t.counts.entry((log.outcome_a, log.outcome_b)).or_insert(0) += 1;
            t.a_first += u64::from(log.first() == Party::A);
            t.consistent += u64::from(log.consistency.verdict.is_consistent());
            t.misses += u64::from(log.reduction_point.is_none());
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    let n = cfg.trials as f64;
    let mut marginal_counts: BTreeMap<Outcome, u64> = BTreeMap::new();
    let mut sums: BTreeMap<(usize, usize), (i64, u64)> = BTreeMap::new();
    for (&(oa, ob), &c) in &tally.counts {
        *marginal_counts.entry(oa).or_insert(0) += c;
        *marginal_counts.entry(ob).or_insert(0) += c;
        let e = sums.entry((oa.axis_index, ob.axis_index)).or_insert((0, 0));
        e.0 += (oa.sign.value() * ob.sign.value()) as i64 * c as i64;
        e.1 += c;
    }
    let marginals = marginal_counts.into_iter().map(|(o, c)| (o, c as f64 / n)).collect();
    let correlators: BTreeMap<_, _> = sums
        .into_iter()
        .map(|(k, (s, c))| {
            (
                k,
                Correlator {
                    value: s as f64 / c as f64,
                    trials: c,
                },
            )
        })
        .collect();

    let chsh = if cfg.detector_a.axes.len() == 2 && cfg.detector_b.axes.len() == 2 {
        let cells = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|k| correlators.get(&k).copied());
        if cells.iter().all(Option::is_some) {
            let e = cells.map(|c| c.expect("checked above"));
            let variance: f64 = e.iter().map(|c| (1.0 - c.value * c.value) / c.trials as f64).sum();
            Some(ChshEstimate {
                value: e[0].value - e[1].value + e[2].value + e[3].value,
                standard_error: variance.sqrt(),
            })
        } else {
            None
        }
    } else {
        None
    };

    let psi = singlet();
    let lhv = lhv_constraints_check(
        &born_probabilities(&psi, &cfg.detector_a)?,
        &born_probabilities(&psi, &cfg.detector_b)?,
    );

    let total: u64 = tally.counts.values().sum();
    if total != cfg.trials {
        return Err(Error::State(format!("tallied {total} of {} trials", cfg.trials)));
    }
    Ok(EnsembleStats {
        trials: cfg.trials,
        counts: tally.counts,
        marginals,
        correlators,
        chsh,
        lhv,
        a_first: tally.a_first,
        consistent: tally.consistent,
        reduction_misses: tally.misses,
    })
}

impl EnsembleStats {
    /// Trials in which both detectors measured the same axis index and got
    /// the same sign.
    pub fn same_sign_same_axis(&self) -> u64 {
        self.counts
            .iter()
            .filter(|((a, b), _)| a.axis_index == b.axis_index && a.sign == b.sign)
            .map(|(_, n)| n)
            .sum()
    }

    pub fn marginal(&self, o: &Outcome) -> f64 {
        self.marginals.get(o).copied().unwrap_or(0.0)
    }
}

impl fmt::Display for EnsembleStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials\t{}", self.trials)?;
        writeln!(f, "[counts]")?;
        for ((a, b), n) in &self.counts {
            writeln!(f, "{a}\t{b}\t{n}")?;
        }
        writeln!(f, "[marginals]")?;
        for (o, p) in &self.marginals {
            writeln!(f, "{o}\t{}", fmt_num(*p))?;
        }
        writeln!(f, "[correlators]")?;
        for ((i, j), c) in &self.correlators {
            writeln!(f, "A[{}]\tB[{}]\t{}\tn={}", i + 1, j + 1, fmt_num(c.value), c.trials)?;
        }
        writeln!(f, "[chsh]")?;
        match &self.chsh {
            Some(c) => writeln!(f, "S\t{}\tse={}", fmt_num(c.value), fmt_num(c.standard_error))?,
            None => writeln!(f, "S\tn/a")?,
        }
        writeln!(f, "[lhv_violations]")?;
        for v in &self.lhv.violations {
            writeln!(f, "{v}")?;
        }
        writeln!(f, "[run]")?;
        writeln!(f, "a_first\t{}", self.a_first)?;
        writeln!(f, "b_first\t{}", self.trials - self.a_first)?;
        writeln!(f, "consistent\t{}", self.consistent)?;
        writeln!(f, "inconsistent\t{}", self.trials - self.consistent)?;
        writeln!(f, "reduction_misses\t{}", self.reduction_misses)
    }
}

#[cfg(test)]
mod tests {
    use super::super::presets::{chsh, figure1};
    use super::*;
    use crate::kinematics::Axis;
    use crate::quantum::{LhvViolation, Sign};

    #[test]
    fn shared_axis_statistics() {
        let mut cfg = figure1();
        cfg.detector_b.axes = vec![Axis::Z];
        cfg.trials = 20_000;
        let s = run_ensemble(&cfg).unwrap();
        assert_eq!(s.counts.values().sum::<u64>(), 20_000);
        assert_eq!(s.same_sign_same_axis(), 0);
        for p in [Party::A, Party::B] {
            let m = s.marginal(&Outcome::new(p, 0, Sign::Plus));
            assert!((m - 0.5).abs() < 0.015, "{m}");
        }
        assert_eq!(s.correlators[&(0, 0)].value, -1.0);
        assert!(s.chsh.is_none());
        assert!(s.lhv.violations.iter().any(|v| matches!(v, LhvViolation::NonExclusive { .. })));
        assert_eq!(s.consistent, 20_000);
        assert_eq!(s.a_first, 0);
    }

    #[test]
    fn chsh_design_violates_the_bound() {
        let mut cfg = chsh();
        cfg.trials = 40_000;
        let s = run_ensemble(&cfg).unwrap();
        let c = s.chsh.unwrap();
        assert!((c.value - 2.0 * 2f64.sqrt()).abs() < 5.0 * c.standard_error, "{c:?}");
        assert!(c.value > 2.0);
    }

    #[test]
    fn stats_text_is_reproducible() {
        let mut cfg = chsh();
        cfg.trials = 2000;
        let a = run_ensemble(&cfg).unwrap().to_string();
        let b = run_ensemble(&cfg).unwrap().to_string();
        assert_eq!(a, b);
        let order = ["[counts]", "[marginals]", "[correlators]", "[chsh]", "[lhv_violations]"];
        let pos: Vec<usize> = order.iter().map(|h| a.find(h).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        cfg.seed += 1;
        assert_ne!(run_ensemble(&cfg).unwrap().to_string(), a);
    }
}
