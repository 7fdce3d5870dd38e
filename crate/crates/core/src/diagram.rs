//! Spacetime diagrams of a scenario: x¹ horizontal, t vertical, light
//! cones at ±45°.

use crate::collapse::{arrival_on_worldline, reduction_point_on_branch, CollapsePolicy, CollapseSurface};
use crate::error::{Error, Result};
use crate::kinematics::Party;
use crate::minkowski::{boost, inverse_boost, Boost, Event};
use crate::scenario::{lightlike_source, resolve_geometry, ScenarioConfig};
use std::fmt::Write as _;

/// A point of the (x¹, t) plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extents {
    pub x_min: f64,
    pub x_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Extents {
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.t >= self.t_min && p.t <= self.t_max
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Drawable {
    Worldline { label: String, from: Point, to: Point },
    LightCone { from: Point, to: Point },
    /// Polyline of a collapse surface.
    Surface { label: String, points: Vec<Point> },
    Event { label: String, at: Point },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSpec {
    /// Rapidity of the frame the diagram is drawn in.
    pub frame_zeta: f64,
    pub extents: Extents,
    pub elements: Vec<Drawable>,
}

impl DiagramSpec {
    pub fn event(&self, label: &str) -> Option<Point> {
        self.elements.iter().find_map(|d| match d {
            Drawable::Event { label: l, at } if l == label => Some(*at),
            _ => None,
        })
    }
}

/// `A`, `B` or `zeta:<v>` to a frame rapidity.
pub fn parse_frame(spec: &str, cfg: &ScenarioConfig) -> Result<f64> {
    match spec.trim() {
        "A" => Ok(cfg.detector_a.worldline.zeta),
        "B" => Ok(cfg.detector_b.worldline.zeta),
        s => s
            .strip_prefix("zeta:")
            .and_then(|v| v.trim().parse::<f64>().ok())
            .filter(|z| z.is_finite())
            .ok_or_else(|| Error::semantic("frame", format!("expected A, B or zeta:<v>, got `{s}`"))),
    }
}

/// Clips the line p + s·d to the box.
fn clip(p: Point, d: Point, e: &Extents) -> Option<(Point, Point)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p0, d0, min, max) in [(p.x, d.x, e.x_min, e.x_max), (p.t, d.t, e.t_min, e.t_max)] {
        if d0 == 0.0 {
            if p0 < min || p0 > max {
                return None;
            }
        } else {
            let (a, b) = ((min - p0) / d0, (max - p0) / d0);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
    }
    (lo < hi).then(|| {
        (
            Point { x: p.x + lo * d.x, t: p.t + lo * d.t },
            Point { x: p.x + hi * d.x, t: p.t + hi * d.t },
        )
    })
}

/// Direction of a plane of slope `slope` in the rest frame of `decider_zeta`,
/// expressed in the frame `frame_zeta`.
fn plane_direction(slope: f64, decider_zeta: f64, frame_zeta: f64) -> Result<Point> {
    let rest = Event::planar(slope, 1.0);
    let lab = inverse_boost(&rest, &Boost::new(decider_zeta))?;
    let f = boost(&lab, &Boost::new(frame_zeta))?;
    Ok(Point { x: f.x1, t: f.t })
}

/// Builds the figure for `cfg` in the frame of rapidity `frame_zeta`,
/// using the nominal (jitter-free) decision events.
pub fn diagram_spec(cfg: &ScenarioConfig, frame_zeta: f64) -> Result<DiagramSpec> {
    let g = resolve_geometry(cfg)?;
    let (da, db) = (&cfg.detector_a, &cfg.detector_b);
    let (a1, b2) = (g.nominal_a, g.nominal_b);
    let blc = CollapsePolicy::BackwardLightCone;
    let inst = CollapsePolicy::Instantaneous;
    let surf = |apex: Event, policy, party: Party| CollapseSurface::new(apex, policy, cfg.detector(party).worldline.zeta);

    let mut labeled: Vec<(&str, Event)> = vec![("S", g.source)];
    if let Ok(s2) = lightlike_source(&g.detection_a, &g.detection_b, 0.0) {
        labeled.push(("S2", s2));
    }
    labeled.push(("A1", a1));
    labeled.push(("B2", b2));
    if let Ok(p) = reduction_point_on_branch(&surf(a1, blc, Party::A), g.branch(Party::B)) {
        labeled.push(("SA", p));
    }
    if let Ok(p) = reduction_point_on_branch(&surf(b2, blc, Party::B), g.branch(Party::A)) {
        labeled.push(("SB", p));
    }
    labeled.push(("B1(inst)", arrival_on_worldline(&surf(a1, inst, Party::A), &db.worldline)?));
    labeled.push(("A2(inst)", arrival_on_worldline(&surf(b2, inst, Party::B), &da.worldline)?));
    labeled.push(("B1(blc)", arrival_on_worldline(&surf(a1, blc, Party::A), &db.worldline)?));
    labeled.push(("A2(blc)", arrival_on_worldline(&surf(b2, blc, Party::B), &da.worldline)?));

    let frame = Boost::new(frame_zeta);
    let to_point = |e: &Event| -> Result<Point> {
        let f = boost(e, &frame)?;
        Ok(Point { x: f.x1, t: f.t })
    };
    let points = labeled
        .iter()
        .map(|(l, e)| Ok((l.to_string(), to_point(e)?)))
        .collect::<Result<Vec<_>>>()?;

    // bounding box of the events and the origin, padded
    let xs = points.iter().map(|p| p.1.x).chain([0.0]);
    let ts = points.iter().map(|p| p.1.t).chain([0.0]);
    let (x_min, x_max) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (t_min, t_max) = ts.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let pad = 0.15 * (x_max - x_min).max(t_max - t_min).max(1.0);
    let extents = Extents {
        x_min: x_min - pad,
        x_max: x_max + pad,
        t_min: t_min - pad,
        t_max: t_max + pad,
    };

    let mut elements = Vec::new();
    let origin = Point { x: 0.0, t: 0.0 };
    for d in [da, db] {
        let w = d.worldline;
        let through = to_point(&w.position_at(0.0))?;
        let dir = to_point(&w.at_rest_time(1.0))?;
        let dir = Point { x: dir.x - through.x, t: dir.t - through.t };
        if let Some((from, to)) = clip(through, dir, &extents) {
            elements.push(Drawable::Worldline { label: d.party.label().to_string(), from, to });
        }
    }
    for slope in [1.0, -1.0] {
        if let Some((from, to)) = clip(origin, Point { x: 1.0, t: slope }, &extents) {
            elements.push(Drawable::LightCone { from, to });
        }
    }

    let mut policies = vec![inst, blc];
    if !policies.contains(&cfg.policy) {
        policies.push(cfg.policy);
    }
    for (party, apex) in [(Party::A, a1), (Party::B, b2)] {
        let p = to_point(&apex)?;
        let zeta = cfg.detector(party).worldline.zeta;
        for policy in &policies {
            let name = format!("{}:{}", crate::scenario::decision_label(party), policy.tag());
            let pts = match policy.plane_slope() {
                Some(s) => {
                    let dir = plane_direction(s, zeta, frame_zeta)?;
                    clip(p, dir, &extents).map(|(a, b)| vec![a, b])
                }
                None => {
                    // two past-directed rays from the apex, invariant in shape
                    let left = clip(p, Point { x: -1.0, t: -1.0 }, &extents);
                    let right = clip(p, Point { x: 1.0, t: -1.0 }, &extents);
                    match (left, right) {
                        (Some((l, _)), Some((r, _))) => Some(vec![l, p, r]),
                        _ => None,
                    }
                }
            };
            if let Some(points) = pts {
                elements.push(Drawable::Surface { label: name, points });
            }
        }
    }
    for (label, at) in points {
        elements.push(Drawable::Event { label, at });
    }
    Ok(DiagramSpec {
        frame_zeta,
        extents,
        elements,
    })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Static SVG with one element per drawable.
pub fn render_svg(spec: &DiagramSpec) -> String {
    const WIDTH: f64 = 800.0;
    const MARGIN: f64 = 40.0;
    let e = &spec.extents;
    let scale = (WIDTH - 2.0 * MARGIN) / (e.x_max - e.x_min);
    let height = (e.t_max - e.t_min) * scale + 2.0 * MARGIN;
    let px = |p: Point| ((p.x - e.x_min) * scale + MARGIN, (e.t_max - p.t) * scale + MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    );
    let _ = writeln!(s, "<title>spacetime diagram, frame rapidity {}</title>", spec.frame_zeta);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let line = |s: &mut String, class: &str, label: &str, a: Point, b: Point, style: &str| {
        let ((x1, y1), (x2, y2)) = (px(a), px(b));
        let _ = writeln!(
            s,
            r#"<line class="{class}" data-label="{}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#,
            escape(label)
        );
    };
    for d in &spec.elements {
        match d {
            Drawable::LightCone { from, to } => {
                line(&mut s, "light-cone", "", *from, *to, r##"stroke="#999" stroke-dasharray="4 4""##)
            }
            Drawable::Worldline { label, from, to } => {
                line(&mut s, "worldline", label, *from, *to, r#"stroke="black" stroke-width="1.5""#);
                let (x, y) = px(*to);
                let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="14">{}</text>"#, x + 4.0, y + 14.0, escape(label));
            }
            Drawable::Surface { label, points } => {
                let path: Vec<String> = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let (x, y) = px(*p);
                        format!("{}{x:.3} {y:.3}", if i == 0 { "M" } else { "L" })
                    })
                    .collect();
                let color = if label.ends_with("blc") { "#c0392b" } else { "#2471a3" };
                let _ = writeln!(
                    s,
                    r#"<path class="surface" data-label="{}" d="{}" fill="none" stroke="{color}"/>"#,
                    escape(label),
                    path.join(" ")
                );
            }
            Drawable::Event { label, at } => {
                let (x, y) = px(*at);
                let _ = writeln!(
                    s,
                    r#"<circle class="event" data-label="{}" data-t="{:.6}" data-x="{:.6}" cx="{x:.3}" cy="{y:.3}" r="3"/>"#,
                    escape(label),
                    at.t,
                    at.x
                );
                let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="12">{}</text>"#, x + 5.0, y - 5.0, escape(label));
            }
        }
    }
    s.push_str("</svg>\n");
    s
}
