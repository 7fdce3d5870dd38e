//! Line-oriented scenario files.
//!
//! ```text
//! [source]
//! mode = derived
//! tau_A = 0.8
//! tau_B = 0.664
//!
//! [detector.A]
//! t_start = -1.0005
//! window = 0.001
//! axes = (0, 0, 1)
//! ```
//!
//! Sections are `[source]`, `[detector.A]`, `[detector.B]`, `[policy]` and
//! `[run]`. Everything after `#` is a comment. Unknown sections and keys are
//! rejected; [`schema`] lists the accepted keys with their defaults.

use crate::collapse::CollapsePolicy;
use crate::error::{Error, Result};
use crate::kinematics::{Axis, Detector, Party, Worldline, DEFAULT_JITTER};
use crate::minkowski::{rapidity_from_beta, Event};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Where the pair is emitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceSpec {
    Explicit(Event),
    /// Solved from the proper times to the nominal decision events.
    Derived { tau_a: f64, tau_b: f64 },
    /// On the past light cones of both detection events, moved `margin`
    /// further into the past.
    Lightlike { margin: f64 },
}

impl SourceSpec {
    pub fn mode(&self) -> &'static str {
        match self {
            SourceSpec::Explicit(_) => "explicit",
            SourceSpec::Derived { .. } => "derived",
            SourceSpec::Lightlike { .. } => "lightlike",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub source: SourceSpec,
    /// Expected speed of both signals (units of c); checked against the
    /// resolved geometry when present.
    pub signal_speed: Option<f64>,
    pub detector_a: Detector,
    pub detector_b: Detector,
    pub policy: CollapsePolicy,
    pub trials: u64,
    pub seed: u64,
    /// Rapidities of the frames in which trial logs are reported.
    pub report_frames: Vec<f64>,
    /// Overrides the proper-time ordering when set.
    pub forced_first: Option<Party>,
}

impl ScenarioConfig {
    pub fn detector(&self, party: Party) -> &Detector {
        match party {
            Party::A => &self.detector_a,
            Party::B => &self.detector_b,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.detector_a.validate()?;
        self.detector_b.validate()?;
        self.policy
            .validate()
            .map_err(|e| Error::semantic("policy.surface", e.to_string()))?;
        if self.trials == 0 {
            return Err(Error::semantic("run.trials", "at least one trial is required"));
        }
        if let Some(v) = self.signal_speed {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::semantic("source.signal_speed", "must lie in (0, 1]"));
            }
        }
        if self.report_frames.iter().any(|z| !z.is_finite()) {
            return Err(Error::semantic("run.report_frames", "rapidities must be finite"));
        }
        match self.source {
            SourceSpec::Explicit(e) if !e.is_finite() => {
                Err(Error::semantic("source.t", "coordinates must be finite"))
            }
            SourceSpec::Derived { tau_a, tau_b } => {
                for (k, v) in [("source.tau_A", tau_a), ("source.tau_B", tau_b)] {
                    if !(v >= 0.0) || !v.is_finite() {
                        return Err(Error::semantic(k, "proper time must be finite and non-negative"));
                    }
                }
                Ok(())
            }
            SourceSpec::Lightlike { margin } if !(margin >= 0.0) || !margin.is_finite() => {
                Err(Error::semantic("source.margin", "must be finite and non-negative"))
            }
            _ => Ok(()),
        }
    }

    /// Canonical text form with every default spelled out. Parsing it
    /// yields the same configuration.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("[source]\n");
        let _ = writeln!(out, "mode = {}", self.source.mode());
        match self.source {
            SourceSpec::Explicit(e) => {
                let _ = writeln!(out, "t = {}\nx1 = {}\nx2 = {}\nx3 = {}", e.t, e.x1, e.x2, e.x3);
            }
            SourceSpec::Derived { tau_a, tau_b } => {
                let _ = writeln!(out, "tau_A = {tau_a}\ntau_B = {tau_b}");
            }
            SourceSpec::Lightlike { margin } => {
                let _ = writeln!(out, "margin = {margin}");
            }
        }
        if let Some(v) = self.signal_speed {
            let _ = writeln!(out, "signal_speed = {v}");
        }
        for d in [&self.detector_a, &self.detector_b] {
            let _ = writeln!(out, "\n[detector.{}]", d.party);
            let _ = writeln!(out, "rapidity = {}", d.worldline.zeta);
            let _ = writeln!(out, "offset = {}, {}", d.worldline.offset[0], d.worldline.offset[1]);
            let _ = writeln!(out, "t_start = {}", d.t_start);
            let _ = writeln!(out, "window = {}", d.dt_window);
            let _ = writeln!(out, "pre_decision = {}", d.pre_decision);
            let axes: Vec<String> = d
                .axes
                .iter()
                .map(|a| {
                    let [x, y, z] = a.components();
                    format!("({x}, {y}, {z})")
                })
                .collect();
            let _ = writeln!(out, "axes = {}", axes.join(", "));
            let _ = writeln!(out, "weights = {}", join(&d.axis_weights));
            let _ = writeln!(out, "jitter = {}", d.jitter);
        }
        let _ = writeln!(out, "\n[policy]\nsurface = {}", self.policy.tag());
        let _ = writeln!(out, "\n[run]\ntrials = {}\nseed = {}", self.trials, self.seed);
        let _ = writeln!(out, "report_frames = {}", join(&self.report_frames));
        let first = self.forced_first.map_or("auto", |p| p.label());
        let _ = writeln!(out, "first = {first}");
        out
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// One accepted key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeySpec {
    pub section: &'static str,
    pub key: &'static str,
    pub kind: &'static str,
    /// `None` when the key is required (in the modes that use it).
    pub default: Option<&'static str>,
    pub description: &'static str,
}

type KeyRow = (&'static str, &'static str, Option<&'static str>, &'static str);

const SOURCE_KEYS: [KeyRow; 9] = [
    ("mode", "derived | explicit | lightlike", Some("derived"), "how the emission event is placed"),
    ("tau_A", "float", None, "derived: proper time from the source to A's decision"),
    ("tau_B", "float", None, "derived: proper time from the source to B's decision"),
    ("t", "float", None, "explicit: emission time"),
    ("x1", "float", None, "explicit: emission position"),
    ("x2", "float", Some("0"), "explicit: transverse position"),
    ("x3", "float", Some("0"), "explicit: transverse position"),
    ("margin", "float", Some("0"), "lightlike: extra lab time before the light-cone intersection"),
    ("signal_speed", "float", None, "optional check of both branch speeds, in (0, 1]"),
];

const DETECTOR_KEYS: [KeyRow; 9] = [
    ("rapidity", "float", Some("0"), "rapidity of the worldline along x1; excludes beta"),
    ("beta", "float", None, "velocity along x1 in units of c, |beta| < 1; excludes rapidity"),
    ("offset", "float, float", Some("0, 0"), "transverse position (x2, x3)"),
    ("t_start", "float", None, "rest-frame time at which the signal arrives"),
    ("window", "float", None, "rest-frame length of the response window"),
    ("pre_decision", "float", Some("window / 2"), "delay from t_start to the nominal decision"),
    ("axes", "(x, y, z), ...", None, "unit measurement axes"),
    ("weights", "float, ...", Some("uniform"), "probability of choosing each axis; sums to 1"),
    ("jitter", "float", Some("0.8"), "spread of the sharp decision time, in [0, 1)"),
];

const POLICY_KEYS: [KeyRow; 1] = [("surface", "inst | plane:<slope> | blc", Some("blc"), "collapse hypersurface")];

const RUN_KEYS: [KeyRow; 4] = [
    ("trials", "integer >= 1", Some("1"), "number of trials"),
    ("seed", "integer", Some("0"), "base seed; trial i uses stream i"),
    ("report_frames", "float, ...", Some("0"), "rapidities of the frames used in trial logs"),
    ("first", "auto | A | B", Some("auto"), "force which detector decides first"),
];

/// Every accepted key, in canonical order.
pub fn schema() -> Vec<KeySpec> {
    let groups: [(&'static str, &[KeyRow]); 5] = [
        ("source", &SOURCE_KEYS),
        ("detector.A", &DETECTOR_KEYS),
        ("detector.B", &DETECTOR_KEYS),
        ("policy", &POLICY_KEYS),
        ("run", &RUN_KEYS),
    ];
    groups
        .iter()
        .flat_map(|(section, rows)| {
            rows.iter().map(move |&(key, kind, default, description)| KeySpec {
                section,
                key,
                kind,
                default,
                description,
            })
        })
        .collect()
}

const SECTIONS: [&str; 5] = ["source", "detector.A", "detector.B", "policy", "run"];

struct Entry {
    line: usize,
    value: String,
    used: bool,
}

/// Key/value pairs of one section, tracking which keys were consumed.
struct Section {
    name: String,
    entries: BTreeMap<String, Entry>,
}

impl Section {
    fn path(&self, key: &str) -> String {
        format!("{}.{key}", self.name)
    }

    fn raw(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.get_mut(key).map(|e| {
            e.used = true;
            (e.line, e.value.clone())
        })
    }

    fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn float(&mut self, key: &str) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some((_, v)) => parse_float(&v).map(Some).map_err(|m| Error::semantic(self.path(key), m)),
        }
    }

    fn required_float(&mut self, key: &str) -> Result<f64> {
        self.float(key)?
            .ok_or_else(|| Error::semantic(self.path(key), "required key is missing"))
    }

    fn floats(&mut self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.raw(key) {
            None => Ok(None),
            Some((_, v)) => v
                .split(',')
                .map(parse_float)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Some)
                .map_err(|m| Error::semantic(self.path(key), m)),
        }
    }

    fn integer(&mut self, key: &str) -> Result<Option<u64>> {
        match self.raw(key) {
            None => Ok(None),
            Some((_, v)) => v
                .trim()
                .parse::<u64>()
                .map(Some)
                .map_err(|_| Error::semantic(self.path(key), format!("expected a non-negative integer, got `{v}`"))),
        }
    }

    /// Rejects keys that were present but not consumed.
    fn finish(self) -> Result<()> {
        match self.entries.iter().find(|(_, e)| !e.used) {
            None => Ok(()),
            Some((k, e)) => {
                let known = schema()
                    .iter()
                    .any(|s| s.section == self.name && s.key == k);
                let why = if known {
                    format!("not used in this configuration (line {})", e.line)
                } else {
                    format!("unknown key (line {})", e.line)
                };
                Err(Error::semantic(self.path(k), why))
            }
        }
    }
}

fn parse_float(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite number, got `{s}`")),
    }
}

/// Parses "(x, y, z), (x, y, z), ..." into unit axes.
pub fn parse_axis_list(s: &str) -> Result<Vec<Axis>> {
    parse_axes(s).map_err(|m| Error::semantic("axes", m))
}

fn parse_axes(s: &str) -> std::result::Result<Vec<Axis>, String> {
    let mut axes = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` in `{rest}`"))?;
        let close = open.find(')').ok_or("unclosed `(`")?;
        let parts: Vec<f64> = open[..close]
            .split(',')
            .map(parse_float)
            .collect::<std::result::Result<_, _>>()?;
        let v: [f64; 3] = parts
            .try_into()
            .map_err(|p: Vec<f64>| format!("an axis has 3 components, got {}", p.len()))?;
        axes.push(Axis::new(v).map_err(|e| e.to_string())?);
        rest = open[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err("trailing comma".into());
            }
        } else if !rest.is_empty() {
            return Err(format!("unexpected `{rest}` after axis"));
        }
    }
    if axes.is_empty() {
        return Err("at least one axis is required".into());
    }
    Ok(axes)
}

fn split_sections(text: &str) -> Result<BTreeMap<String, Section>> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(inner) = line.strip_prefix('[') {
            let name = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Syntax {
                    line: line_no,
                    message: format!("malformed section header `{line}`"),
                })?
                .trim();
            if !SECTIONS.contains(&name) {
                return Err(Error::semantic(name, format!("unknown section (line {line_no})")));
            }
            if sections.contains_key(name) {
                return Err(Error::semantic(name, format!("section repeated (line {line_no})")));
            }
            sections.insert(
                name.to_string(),
                Section {
                    name: name.to_string(),
                    entries: BTreeMap::new(),
                },
            );
            current = Some(name.to_string());
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Syntax {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k.contains(char::is_whitespace) {
            return Err(Error::Syntax {
                line: line_no,
                message: format!("bad key `{k}`"),
            });
        }
        if v.is_empty() {
            return Err(Error::Syntax {
                line: line_no,
                message: format!("missing value for `{k}`"),
            });
        }
        let name = current.as_ref().ok_or_else(|| Error::Syntax {
            line: line_no,
            message: "key outside of any section".into(),
        })?;
        let section = sections.get_mut(name).expect("current section exists");
        if section.entries.contains_key(k) {
            return Err(Error::semantic(section.path(k), format!("key repeated (line {line_no})")));
        }
        section.entries.insert(
            k.to_string(),
            Entry {
                line: line_no,
                value: v.to_string(),
                used: false,
            },
        );
    }
    if sections.is_empty() {
        return Err(Error::Syntax {
            line: 1,
            message: "empty configuration".into(),
        });
    }
    Ok(sections)
}

fn parse_source(s: &mut Section) -> Result<(SourceSpec, Option<f64>)> {
    let mode = s.raw("mode").map(|(_, v)| v).unwrap_or_else(|| "derived".into());
    let spec = match mode.as_str() {
        "derived" => SourceSpec::Derived {
            tau_a: s.required_float("tau_A")?,
            tau_b: s.required_float("tau_B")?,
        },
        "explicit" => SourceSpec::Explicit(Event::new(
            s.required_float("t")?,
            s.required_float("x1")?,
            s.float("x2")?.unwrap_or(0.0),
            s.float("x3")?.unwrap_or(0.0),
        )),
        "lightlike" => SourceSpec::Lightlike {
            margin: s.float("margin")?.unwrap_or(0.0),
        },
        other => {
            return Err(Error::semantic(
                "source.mode",
                format!("expected derived, explicit or lightlike, got `{other}`"),
            ))
        }
    };
    let speed = s.float("signal_speed")?;
    Ok((spec, speed))
}

fn parse_detector(s: &mut Section, party: Party) -> Result<Detector> {
    if s.has("rapidity") && s.has("beta") {
        return Err(Error::semantic(s.path("beta"), "give either rapidity or beta, not both"));
    }
    let zeta = match s.float("beta")? {
        Some(beta) => rapidity_from_beta(beta).map_err(|e| Error::semantic(s.path("beta"), e.to_string()))?,
        None => s.float("rapidity")?.unwrap_or(0.0),
    };
    let offset = match s.floats("offset")? {
        None => [0.0, 0.0],
        Some(v) => v
            .try_into()
            .map_err(|_| Error::semantic(s.path("offset"), "expected two numbers (x2, x3)"))?,
    };
    let worldline = Worldline::with_offset(zeta, offset).map_err(|e| Error::semantic(s.path("rapidity"), e.to_string()))?;
    let t_start = s.required_float("t_start")?;
    let window = s.required_float("window")?;
    let pre = s.float("pre_decision")?.unwrap_or(window / 2.0);
    let axes = match s.raw("axes") {
        None => return Err(Error::semantic(s.path("axes"), "required key is missing")),
        Some((_, v)) => parse_axes(&v).map_err(|m| Error::semantic(s.path("axes"), m))?,
    };
    let weights = s
        .floats("weights")?
        .unwrap_or_else(|| vec![1.0 / axes.len() as f64; axes.len()]);
    let jitter = s.float("jitter")?.unwrap_or(DEFAULT_JITTER);
    let mut d = Detector::new(party, worldline, t_start, window, pre, axes, weights)?;
    d.jitter = jitter;
    d.validate()?;
    Ok(d)
}

fn parse_party(key: &str, v: &str) -> Result<Option<Party>> {
    match v {
        "auto" => Ok(None),
        "A" => Ok(Some(Party::A)),
        "B" => Ok(Some(Party::B)),
        _ => Err(Error::semantic(key, format!("expected auto, A or B, got `{v}`"))),
    }
}

/// Parses and validates a scenario file.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let mut sections = split_sections(text)?;
    let mut take = |name: &str| {
        sections
            .remove(name)
            .ok_or_else(|| Error::semantic(name, "required section is missing"))
    };
    let mut source = take("source")?;
    let mut da = take("detector.A")?;
    let mut db = take("detector.B")?;
    let empty = |name: &str| Section {
        name: name.into(),
        entries: BTreeMap::new(),
    };
    let mut policy = take("policy").unwrap_or_else(|_| empty("policy"));
    let mut run = take("run").unwrap_or_else(|_| empty("run"));

    let (source_spec, signal_speed) = parse_source(&mut source)?;
    let detector_a = parse_detector(&mut da, Party::A)?;
    let detector_b = parse_detector(&mut db, Party::B)?;
    let policy_value = match policy.raw("surface") {
        None => CollapsePolicy::BackwardLightCone,
        Some((_, v)) => CollapsePolicy::parse_tag(&v).map_err(|e| Error::semantic("policy.surface", e.to_string()))?,
    };
    let trials = run.integer("trials")?.unwrap_or(1);
    let seed = run.integer("seed")?.unwrap_or(0);
    let report_frames = run.floats("report_frames")?.unwrap_or_else(|| vec![0.0]);
    let forced_first = match run.raw("first") {
        None => None,
        Some((_, v)) => parse_party("run.first", &v)?,
    };
    for s in [source, da, db, policy, run] {
        s.finish()?;
    }
    let cfg = ScenarioConfig {
        source: source_spec,
        signal_speed,
        detector_a,
        detector_b,
        policy: policy_value,
        trials,
        seed,
        report_frames,
        forced_first,
    };
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MINIMAL: &str = "
[source]
mode = explicit
t = -2
x1 = 0.1

[detector.A]
t_start = -1
window = 0.01
axes = (0, 0, 1)

[detector.B]
beta = 0.5
t_start = -1
window = 0.01
axes = (1, 0, 0), (0, 0, 1)
";

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.source, SourceSpec::Explicit(Event::new(-2.0, 0.1, 0.0, 0.0)));
        assert_eq!(c.policy, CollapsePolicy::BackwardLightCone);
        assert_eq!((c.trials, c.seed), (1, 0));
        assert_eq!(c.report_frames, vec![0.0]);
        assert_eq!(c.detector_a.pre_decision, 0.005);
        assert_eq!(c.detector_b.axis_weights, vec![0.5, 0.5]);
        assert!((c.detector_b.worldline.zeta - 0.5f64.atanh()).abs() < 1e-15);
        assert_eq!(c.detector_a.jitter, DEFAULT_JITTER);
        assert_eq!(c.forced_first, None);
    }

    #[test]
    fn dump_round_trips() {
        let c = parse_config(MINIMAL).unwrap();
        let text = c.to_text();
        assert_eq!(parse_config(&text).unwrap(), c);
        assert_eq!(parse_config(&text).unwrap().to_text(), text);
    }

    fn expect_semantic(text: &str, want: &str) {
        match parse_config(text) {
            Err(Error::Semantic { key, .. }) => assert_eq!(key, want),
            other => panic!("expected semantic error on {want}, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_problem() {
        assert!(matches!(parse_config(""), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_config("# nothing\n\n"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_config("[source]\nmode derived\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse_config("x = 1\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_config("[source\n"), Err(Error::Syntax { line: 1, .. })));

        expect_semantic(&MINIMAL.replace("(0, 0, 1)\n", "(0,0,2)\n"), "detector.A.axes");
        expect_semantic(&MINIMAL.replace("beta = 0.5", "beta = 1.0"), "detector.B.beta");
        expect_semantic(&MINIMAL.replace("beta = 0.5", "colour = red"), "detector.B.colour");
        expect_semantic(&MINIMAL.replace("x1 = 0.1", "x1 = 0.1\ntau_A = 1"), "source.tau_A");
        expect_semantic(&format!("{MINIMAL}[run]\ntrials = 0\n"), "run.trials");
        expect_semantic(&format!("{MINIMAL}[run]\nfirst = C\n"), "run.first");
        expect_semantic(&format!("{MINIMAL}[policy]\nsurface = plane:1.5\n"), "policy.surface");
        expect_semantic(&format!("{MINIMAL}[extra]\n"), "extra");
        expect_semantic("[source]\nmode = explicit\nt = 0\nx1 = 0\n", "detector.A");
        expect_semantic(&MINIMAL.replace("window = 0.01\naxes = (0, 0, 1)", "window = 0.01"), "detector.A.axes");
    }

    #[test]
    fn axis_lists() {
        let a = parse_axes("(1,0,0),( 0 , 0 , 1 )").unwrap();
        assert_eq!(a, vec![Axis::X, Axis::Z]);
        assert!(parse_axes("(1,0)").is_err());
        assert!(parse_axes("(1,0,0),").is_err());
        assert!(parse_axes("(1,0,0) (0,1,0)").is_err());
        assert!(parse_axes("").is_err());
    }

    #[test]
    fn schema_covers_the_dump() {
        let c = parse_config(&format!("{MINIMAL}[run]\nfirst = B\n")).unwrap();
        let mut section = "";
        for line in c.to_text().lines() {
            if let Some(s) = line.strip_prefix('[') {
                section = s.trim_end_matches(']');
            } else if let Some((k, _)) = line.split_once('=') {
                let k = k.trim().to_string();
                assert!(
                    schema().iter().any(|s| s.section == section && s.key == k),
                    "{section}.{k} missing from schema"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn dump_round_trips_for_any_numbers(
            t in -10.0..0.0f64, x in -5.0..5.0f64, z in -3.0..3.0f64, window in 1e-4..1.0f64,
            frac in 0.01..0.99f64, theta in 0.0..6.28f64, seed in any::<u64>()
        ) {
            let text = format!(
                "[source]\nmode = explicit\nt = {t}\nx1 = {x}\n\
                 [detector.A]\nt_start = 0\nwindow = {window}\npre_decision = {}\naxes = ({}, 0, {})\n\
                 [detector.B]\nrapidity = {z}\nt_start = 0\nwindow = {window}\naxes = (0, 1, 0)\n\
                 [run]\nseed = {seed}\nreport_frames = 0, {z}\n",
                frac * window, theta.sin(), theta.cos()
            );
            match parse_config(&text) {
                Ok(c) => prop_assert_eq!(parse_config(&c.to_text()).unwrap(), c),
                // sin²+cos² can miss 1 by more than the unit tolerance only in theory
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
