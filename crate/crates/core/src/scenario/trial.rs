//! One trial: order the decisions, sample outcomes, reduce, and log.

use super::config::ScenarioConfig;
use super::source::{resolve_geometry, ResolvedGeometry};
use crate::collapse::{consistency_between, reduction_point_on_branch, CollapsePolicy, CollapseSurface, ConsistencyDetail};
use crate::error::{Error, Result};
use crate::kinematics::Party;
use crate::minkowski::{boost, Boost, Event};
use crate::ordering::{schedule_decisions, DecisionSchedule};
use crate::quantum::{
    born_probabilities, build_timeline, collapse_state, conditional_probabilities, singlet, Outcome,
    ProbabilityTable, SpinResult, WaveFunctionTimeline,
};
use crate::rng::trial_rng;
use rand::Rng;
use rayon::prelude::*;
use std::fmt::{self, Write as _};

/// Draws one outcome; alternatives with zero probability are never chosen.
pub fn sample_outcome<R: Rng + ?Sized>(table: &ProbabilityTable, rng: &mut R) -> Result<Outcome> {
    let u = rng.random::<f64>() * table.total();
    let mut acc = 0.0;
    let mut last = None;
    for (o, &p) in &table.entries {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = Some(*o);
        if u < acc {
            return Ok(*o);
        }
    }
    last.ok_or_else(|| Error::State("probability table is empty".into()))
}

/// Label of an event in the trial chronology.
pub fn decision_label(party: Party) -> &'static str {
    match party {
        Party::A => "A1",
        Party::B => "B2",
    }
}

/// Label of the point where `first`'s reduction crosses the other branch.
pub fn reduction_label(first: Party) -> &'static str {
    match first {
        Party::A => "SA",
        Party::B => "SB",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialLog {
    pub index: u64,
    pub policy: CollapsePolicy,
    pub source: Event,
    pub detection_a: Event,
    pub detection_b: Event,
    pub schedule: DecisionSchedule,
    pub decision_a: Event,
    pub decision_b: Event,
    pub outcome_a: Outcome,
    pub outcome_b: Outcome,
    /// Where the first decider's surface crosses the other branch; `None`
    /// when it misses the branch between emission and detection.
    pub reduction_point: Option<Event>,
    pub timeline: Option<WaveFunctionTimeline>,
    pub consistency: ConsistencyDetail,
    pub report_frames: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RecordKind {
    Trial,
    Emission,
    Reduction,
    Detection,
    Decision,
    Epoch,
    Outcome,
    Verdict,
}

impl RecordKind {
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Trial => "trial",
            RecordKind::Emission => "emission",
            RecordKind::Reduction => "reduction",
            RecordKind::Detection => "detection",
            RecordKind::Decision => "decision",
            RecordKind::Epoch => "epoch",
            RecordKind::Outcome => "outcome",
            RecordKind::Verdict => "verdict",
        }
    }
}

/// One line of a trial log.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRecord {
    pub kind: RecordKind,
    /// Coordinates in the record's frame.
    pub event: Option<Event>,
    /// Rapidity of the frame, for frame-dependent records.
    pub frame: Option<f64>,
    pub detail: String,
}

/// Nine significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.8e}")
}

impl fmt::Display for LogRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = match self.event {
            Some(e) => [e.t, e.x1, e.x2, e.x3].map(fmt_num).join("\t"),
            None => ["-"; 4].join("\t"),
        };
        let frame = self.frame.map_or("-".to_string(), |z| format!("zeta={z}"));
        write!(f, "{}\t{coords}\t{frame}\t{}", self.kind.name(), self.detail)
    }
}

impl TrialLog {
    pub fn first(&self) -> Party {
        self.schedule.first
    }

    pub fn decision(&self, party: Party) -> Event {
        match party {
            Party::A => self.decision_a,
            Party::B => self.decision_b,
        }
    }

    pub fn outcome(&self, party: Party) -> Outcome {
        match party {
            Party::A => self.outcome_a,
            Party::B => self.outcome_b,
        }
    }

    fn event_records(&self, zeta: f64) -> Result<Vec<LogRecord>> {
        let first = self.schedule.first;
        let mut events = vec![(RecordKind::Emission, self.source, "S".to_string())];
        if let Some(r) = self.reduction_point {
            events.push((RecordKind::Reduction, r, reduction_label(first).to_string()));
        }
        events.push((RecordKind::Detection, self.detection_a, "A".into()));
        events.push((RecordKind::Detection, self.detection_b, "B".into()));
        for p in [Party::A, Party::B] {
            let rank = if p == first { "first" } else { "second" };
            events.push((
                RecordKind::Decision,
                self.decision(p),
                format!("{} {rank} tbar={}", decision_label(p), fmt_num(self.schedule.tbar(p))),
            ));
        }
        let b = Boost::new(zeta);
        let mut records = events
            .into_iter()
            .map(|(kind, e, detail)| {
                Ok(LogRecord {
                    kind,
                    event: Some(boost(&e, &b)?),
                    frame: Some(zeta),
                    detail,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // chronological in this frame; ties keep the causal kind order
        records.sort_by(|x, y| {
            let (tx, ty) = (x.event.map_or(0.0, |e| e.t), y.event.map_or(0.0, |e| e.t));
            tx.total_cmp(&ty).then(x.kind.cmp(&y.kind))
        });
        if let Some(tl) = &self.timeline {
            for ep in tl.in_frame(zeta).epochs()? {
                let bound = |v: Option<f64>, inf: &str| v.map_or(inf.to_string(), fmt_num);
                records.push(LogRecord {
                    kind: RecordKind::Epoch,
                    event: None,
                    frame: Some(zeta),
                    detail: format!(
                        "from={} to={} state={}",
                        bound(ep.start, "-inf"),
                        bound(ep.end, "+inf"),
                        ep.state
                    ),
                });
            }
        }
        Ok(records)
    }

    /// All records: the trial header, the events in each report frame,
    /// the outcomes and the verdict.
    pub fn records(&self) -> Result<Vec<LogRecord>> {
        let s = &self.schedule;
        let mut out = vec![LogRecord {
            kind: RecordKind::Trial,
            event: None,
            frame: None,
            detail: format!(
                "index={} policy={} first={} overlap={} tau_A={} tau_B={}",
                self.index,
                self.policy.tag(),
                s.first,
                s.overlap,
                fmt_num(s.tau_a),
                fmt_num(s.tau_b)
            ),
        }];
        for &z in &self.report_frames {
            out.extend(self.event_records(z)?);
        }
        for p in [self.schedule.first, self.schedule.first.other()] {
            let o = self.outcome(p);
            let axis = self.timeline_axis(p);
            out.push(LogRecord {
                kind: RecordKind::Outcome,
                event: None,
                frame: None,
                detail: format!("{} {o} axis={axis}", decision_label(p)),
            });
        }
        let c = &self.consistency;
        let reach = match self.reduction_point {
            Some(_) => "reduction=on-branch",
            None => "reduction=missed-branch",
        };
        out.push(LogRecord {
            kind: RecordKind::Verdict,
            event: None,
            frame: None,
            detail: format!(
                "{} {reach} a1={} a2={} b1={} b2={}",
                c.verdict,
                fmt_num(c.a1),
                fmt_num(c.a2),
                fmt_num(c.b1),
                fmt_num(c.b2)
            ),
        });
        Ok(out)
    }

    fn timeline_axis(&self, p: Party) -> String {
        match &self.timeline {
            Some(tl) => {
                let r = if p == tl.first { tl.first_result } else { tl.second_result };
                let [x, y, z] = r.axis.components();
                format!("({x}, {y}, {z})")
            }
            None => format!("#{}", self.outcome(p).axis_index + 1),
        }
    }

    /// Tab-separated text, one record per line.
    pub fn to_text(&self) -> Result<String> {
        let mut s = String::new();
        for r in self.records()? {
            let _ = writeln!(s, "{r}");
        }
        Ok(s)
    }
}

/// Runs trial `index` of `cfg`; deterministic in (seed, index).
pub fn run_trial(cfg: &ScenarioConfig, index: u64) -> Result<TrialLog> {
    let geometry = resolve_geometry(cfg).map_err(|e| Error::Trial {
        trial: index,
        source: Box::new(e),
    })?;
    run_trial_with(cfg, &geometry, index)
}

/// [`run_trial`] with the trial-independent geometry already resolved.
pub fn run_trial_with(cfg: &ScenarioConfig, geometry: &ResolvedGeometry, index: u64) -> Result<TrialLog> {
    simulate(cfg, geometry, index).map_err(|e| Error::Trial {
        trial: index,
        source: Box::new(e),
    })
}

/// Every trial of `cfg`, in index order.
pub fn run_trials(cfg: &ScenarioConfig) -> Result<Vec<TrialLog>> {
    cfg.validate()?;
    let geometry = resolve_geometry(cfg)?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial_with(cfg, &geometry, i))
        .collect()
}

fn simulate(cfg: &ScenarioConfig, g: &ResolvedGeometry, index: u64) -> Result<TrialLog> {
    let mut rng = trial_rng(cfg.seed, index);
    let (da, db) = (&cfg.detector_a, &cfg.detector_b);

    let mut schedule = schedule_decisions(da, db, g.tau_a, g.tau_b, &mut rng);
    if let Some(forced) = cfg.forced_first {
        if forced != schedule.first {
            std::mem::swap(&mut schedule.tbar_first, &mut schedule.tbar_second);
            schedule.first = forced;
        }
    }
    let decision_a = da.event_at(schedule.tbar(Party::A));
    let decision_b = db.event_at(schedule.tbar(Party::B));

    let first = schedule.first;
    let second = first.other();
    let (d_first, d_second) = (cfg.detector(first), cfg.detector(second));
    let first_decision = if first == Party::A { decision_a } else { decision_b };
    let second_decision = if first == Party::A { decision_b } else { decision_a };

    let psi = singlet();
    let o_first = sample_outcome(&born_probabilities(&psi, d_first)?, &mut rng)?;
    let k = SpinResult::new(d_first.axes[o_first.axis_index], o_first.sign);
    let reduced = collapse_state(&psi, first, &k.axis, k.sign)?;
    let o_second = sample_outcome(&conditional_probabilities(&reduced, d_second)?, &mut rng)?;
    let l = SpinResult::new(d_second.axes[o_second.axis_index], o_second.sign);

    let surface = CollapseSurface::new(first_decision, cfg.policy, d_first.worldline.zeta);
    let reduction_point = match reduction_point_on_branch(&surface, g.branch(second)) {
        Ok(p) => Some(p),
        Err(Error::Geometry(_)) => None,
        Err(e) => return Err(e),
    };
    let timeline = match reduction_point {
        Some(p) => match build_timeline(&psi, first, p, first_decision, second_decision, k, l) {
            Ok(tl) => Some(tl),
            // a tilted surface can cut the branch after a decision in this frame
            Err(Error::Timeline(_)) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    let consistency = consistency_between(&da.worldline, &decision_a, &db.worldline, &decision_b, cfg.policy)?;
    let (outcome_a, outcome_b) = if first == Party::A {
        (o_first, o_second)
    } else {
        (o_second, o_first)
    };
    Ok(TrialLog {
        index,
        policy: cfg.policy,
        source: g.source,
        detection_a: g.detection_a,
        detection_b: g.detection_b,
        schedule,
        decision_a,
        decision_b,
        outcome_a,
        outcome_b,
        reduction_point,
        timeline,
        consistency,
        report_frames: cfg.report_frames.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::presets::figure1;
    use super::*;
    use crate::collapse::Verdict;
    use crate::kinematics::Axis;
    use crate::quantum::Sign;

    #[test]
    fn figure_one_blc_trial() {
        let cfg = figure1();
        let log = run_trial(&cfg, 0).unwrap();
        assert_eq!(log.first(), Party::B);
        assert_eq!(log.consistency.verdict, Verdict::Consistent);
        let sb = log.reduction_point.unwrap();
        assert!((sb.t + 1.467).abs() < 0.005, "{sb}");
        let text = log.to_text().unwrap();
        assert!(text.contains("reduction\t-1.46"), "{text}");
        let b2 = text.find("decision\t-1.05").unwrap();
        let a1 = text.find("\tA1 second").unwrap();
        assert!(b2 < a1);
        assert_eq!(log.to_text().unwrap(), run_trial(&cfg, 0).unwrap().to_text().unwrap());
    }

    #[test]
    fn figure_one_instantaneous_is_inconsistent() {
        let mut cfg = figure1();
        cfg.policy = CollapsePolicy::Instantaneous;
        let log = run_trial(&cfg, 3).unwrap();
        assert_eq!(log.consistency.verdict, Verdict::Inconsistent);
        // B's plane of simultaneity passes above all of A's branch
        assert!(log.reduction_point.is_none());
        assert!(log.timeline.is_none());
        assert!(log.to_text().unwrap().contains("missed-branch"));
    }

    #[test]
    fn shared_axis_is_always_anticorrelated() {
        let mut cfg = figure1();
        cfg.detector_b.axes = vec![Axis::Z];
        for i in 0..10_000 {
            let log = run_trial(&cfg, i).unwrap();
            assert_eq!(log.outcome_a.sign, log.outcome_b.sign.flipped());
        }
    }

    #[test]
    fn forced_order_is_respected() {
        let mut cfg = figure1();
        cfg.forced_first = Some(Party::A);
        let log = run_trial(&cfg, 0).unwrap();
        assert_eq!(log.first(), Party::A);
        let sa = log.reduction_point.unwrap();
        // on B's branch, inside A1's past light cone
        assert!(sa.t < log.decision_a.t);
        assert!(log.timeline.is_some());
        let natural = run_trial(&figure1(), 0).unwrap();
        assert_eq!(log.decision_a, natural.decision_a);
        assert_eq!(log.decision_b, natural.decision_b);
    }

    #[test]
    fn zero_probability_outcomes_are_never_drawn() {
        let mut entries = std::collections::BTreeMap::new();
        entries.insert(Outcome::new(Party::A, 0, Sign::Plus), 0.0);
        entries.insert(Outcome::new(Party::A, 0, Sign::Minus), 1.0);
        let t = ProbabilityTable { entries };
        let mut rng = trial_rng(1, 1);
        for _ in 0..1000 {
            assert_eq!(sample_outcome(&t, &mut rng).unwrap().sign, Sign::Minus);
        }
    }

    #[test]
    fn errors_carry_the_trial_index() {
        let mut cfg = figure1();
        cfg.source = super::super::config::SourceSpec::Explicit(Event::planar(0.0, 5.0));
        match run_trial(&cfg, 17) {
            Err(Error::Trial { trial: 17, source }) => assert!(source.is_geometry_error()),
            other => panic!("{other:?}"),
        }
    }
}
