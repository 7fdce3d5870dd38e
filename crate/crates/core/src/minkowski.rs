//! Flat 1+3 dimensional spacetime with signature (+,-,-,-).
//!
//! Units have c = 1: the time component of an [`Event`] is c·t and shares the
//! length unit of the spatial components. Boosts act along the first spatial
//! axis only.

use crate::error::{Error, Result};
use std::fmt;

/// Absolute tolerance on |s²| below which a separation counts as lightlike.
pub const TOL_LIGHTLIKE: f64 = 1e-9;

/// A point in Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Event {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Event {
    pub const ORIGIN: Event = Event {
        t: 0.0,
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    pub fn new(t: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Event { t, x1, x2, x3 }
    }

    /// An event in the (t, x1) plane.
    pub fn planar(t: f64, x1: f64) -> Self {
        Event::new(t, x1, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// Euclidean distance between the spatial parts of two events.
    pub fn spatial_distance(&self, other: &Event) -> f64 {
        let d1 = self.x1 - other.x1;
        let d2 = self.x2 - other.x2;
        let d3 = self.x3 - other.x3;
        (d1 * d1 + d2 * d2 + d3 * d3).sqrt()
    }

    /// Linear interpolation `self + s·(other − self)`.
    pub fn lerp(&self, other: &Event, s: f64) -> Event {
        Event::new(
            self.t + s * (other.t - self.t),
            self.x1 + s * (other.x1 - self.x1),
            self.x2 + s * (other.x2 - self.x2),
            self.x3 + s * (other.x3 - self.x3),
        )
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={}, x1={}, x2={}, x3={})", self.t, self.x1, self.x2, self.x3)
    }
}

/// A Lorentz-Poincaré transformation: a boost of rapidity `zeta` along ê₁
/// followed by a translation of the transverse coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Boost {
    pub zeta: f64,
    pub transverse_offsets: [f64; 2],
}

impl Boost {
    pub fn new(zeta: f64) -> Self {
        Boost {
            zeta,
            transverse_offsets: [0.0, 0.0],
        }
    }

    pub fn with_offsets(zeta: f64, offset2: f64, offset3: f64) -> Self {
        Boost {
            zeta,
            transverse_offsets: [offset2, offset3],
        }
    }

    /// Velocity v/c of the boosted frame.
    pub fn beta(&self) -> f64 {
        self.zeta.tanh()
    }

    pub fn gamma(&self) -> f64 {
        self.zeta.cosh()
    }
}

fn checked(e: Event, what: &str) -> Result<Event> {
    if e.is_finite() {
        Ok(e)
    } else {
        Err(Error::Range(format!("{what} produced a non-finite coordinate")))
    }
}

/// Coordinates of `e` in the frame reached by boost `b`.
pub fn boost(e: &Event, b: &Boost) -> Result<Event> {
    if !b.zeta.is_finite() {
        return Err(Error::Range(format!("rapidity {} is not finite", b.zeta)));
    }
    let (ch, sh) = (b.zeta.cosh(), b.zeta.sinh());
    checked(
        Event::new(
            e.t * ch - e.x1 * sh,
            -e.t * sh + e.x1 * ch,
            e.x2 + b.transverse_offsets[0],
            e.x3 + b.transverse_offsets[1],
        ),
        "boost",
    )
}

/// Undoes [`boost`].
pub fn inverse_boost(e: &Event, b: &Boost) -> Result<Event> {
    if !b.zeta.is_finite() {
        return Err(Error::Range(format!("rapidity {} is not finite", b.zeta)));
    }
    let (ch, sh) = (b.zeta.cosh(), b.zeta.sinh());
    checked(
        Event::new(
            e.t * ch + e.x1 * sh,
            e.t * sh + e.x1 * ch,
            e.x2 - b.transverse_offsets[0],
            e.x3 - b.transverse_offsets[1],
        ),
        "inverse boost",
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    Timelike,
    Spacelike,
    Lightlike,
}

impl fmt::Display for IntervalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntervalKind::Timelike => "timelike",
            IntervalKind::Spacelike => "spacelike",
            IntervalKind::Lightlike => "lightlike",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalClass {
    pub s_squared: f64,
    pub kind: IntervalKind,
}

impl IntervalClass {
    pub fn from_s_squared(s_squared: f64) -> Self {
        let kind = if s_squared.abs() <= TOL_LIGHTLIKE {
            IntervalKind::Lightlike
        } else if s_squared > 0.0 {
            IntervalKind::Timelike
        } else {
            IntervalKind::Spacelike
        };
        IntervalClass { s_squared, kind }
    }

    pub fn is_causal(&self) -> bool {
        self.kind != IntervalKind::Spacelike
    }
}

/// Squared interval between two events and its classification.
pub fn interval(e1: &Event, e2: &Event) -> IntervalClass {
    let dt = e2.t - e1.t;
    let d1 = e2.x1 - e1.x1;
    let d2 = e2.x2 - e1.x2;
    let d3 = e2.x3 - e1.x3;
    IntervalClass::from_s_squared(dt * dt - d1 * d1 - d2 * d2 - d3 * d3)
}

/// Rapidity ζ with tanh ζ = β.
pub fn rapidity_from_beta(beta: f64) -> Result<f64> {
    if !beta.is_finite() || beta.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "|beta| must be < 1, got {beta}"
        )));
    }
    Ok(beta.atanh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn boost_reproduces_frame_times() {
        let b = Boost::new(0.5);
        let a1 = boost(&Event::planar(-1.0, 0.0), &b).unwrap();
        assert!(close(a1.t, -1.128, 1e-3), "{}", a1.t);

        let t_b2 = -1.052;
        let b2 = boost(&Event::planar(t_b2, t_b2 * 0.5f64.tanh()), &b).unwrap();
        assert!(close(b2.t, -0.933, 1e-3), "{}", b2.t);
    }

    #[test]
    fn zero_rapidity_is_identity() {
        let e = Event::new(0.3, -2.0, 1.5, 7.0);
        assert_eq!(boost(&e, &Boost::new(0.0)).unwrap(), e);
        assert_eq!(inverse_boost(&e, &Boost::new(0.0)).unwrap(), e);
    }

    #[test]
    fn inverse_boost_examples() {
        let b = Boost::new(0.5);
        let e = inverse_boost(&Event::planar(-0.933, 0.0), &b).unwrap();
        assert!(close(e.t, -1.052, 1e-3), "{}", e.t);
        let e = inverse_boost(&Event::planar(0.0, 1.0), &Boost::new(0.0)).unwrap();
        assert_eq!((e.t, e.x1), (0.0, 1.0));
    }

    #[test]
    fn transverse_offsets_translate() {
        let b = Boost::with_offsets(0.0, 2.0, -1.0);
        let e = boost(&Event::new(1.0, 1.0, 1.0, 1.0), &b).unwrap();
        assert_eq!(e, Event::new(1.0, 1.0, 3.0, 0.0));
    }

    #[test]
    fn extreme_rapidity_is_a_range_error() {
        let r = boost(&Event::planar(1.0, 0.0), &Boost::new(800.0));
        assert!(matches!(r, Err(Error::Range(_))));
        let r = boost(&Event::planar(1.0, 0.0), &Boost::new(f64::NAN));
        assert!(matches!(r, Err(Error::Range(_))));
    }

    #[test]
    fn interval_examples() {
        let e = Event::new(1.0, 2.0, 3.0, 4.0);
        let c = interval(&e, &e);
        assert_eq!(c.s_squared, 0.0);
        assert_eq!(c.kind, IntervalKind::Lightlike);

        let z = 0.5f64;
        let c = interval(&Event::planar(-1.0, 0.0), &Event::planar(-z.cosh(), -z.sinh()));
        // closed form 2(1 − cosh ζ)
        let expected = 2.0 * (1.0 - z.cosh());
        assert!(close(c.s_squared, -0.2553, 1e-4));
        assert!(close(c.s_squared, expected, 1e-12));
        assert_eq!(c.kind, IntervalKind::Spacelike);

        let c = interval(&Event::planar(-1.809, -0.122), &Event::planar(-1.052, -0.486));
        assert!(close(c.s_squared, 0.441, 1e-3), "{}", c.s_squared);
        assert!(close(c.s_squared.sqrt(), 0.664, 1e-3));
        assert_eq!(c.kind, IntervalKind::Timelike);
    }

    fn atanh_by_bisection(beta: f64) -> f64 {
        let (mut lo, mut hi) = (-40.0f64, 40.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.tanh() < beta {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn rapidity_from_beta_examples() {
        assert_eq!(rapidity_from_beta(0.0).unwrap(), 0.0);
        let beta = 0.5f64.tanh();
        assert!(close(beta, 0.4621, 1e-4));
        let z = rapidity_from_beta(beta).unwrap();
        assert!(close(z, 0.5, 1e-9));
        assert!(close(z, atanh_by_bisection(beta), 1e-9));

        let big = rapidity_from_beta(0.999999).unwrap();
        assert!(big.is_finite() && big > 7.0);
        assert!(matches!(rapidity_from_beta(1.0), Err(Error::Domain(_))));
        assert!(matches!(rapidity_from_beta(-1.5), Err(Error::Domain(_))));
    }

    fn rel_close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
    }

    fn event() -> impl Strategy<Value = Event> {
        (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64)
            .prop_map(|(t, a, b, c)| Event::new(t, a, b, c))
    }

    proptest! {
        #[test]
        fn boost_round_trip(e in event(), z in -5.0..5.0f64, o2 in -3.0..3.0f64, o3 in -3.0..3.0f64) {
            let b = Boost::with_offsets(z, o2, o3);
            let back = inverse_boost(&boost(&e, &b).unwrap(), &b).unwrap();
            prop_assert!(rel_close(back.t, e.t, 1e-9));
            prop_assert!(rel_close(back.x1, e.x1, 1e-9));
            prop_assert!(rel_close(back.x2, e.x2, 1e-9));
            prop_assert!(rel_close(back.x3, e.x3, 1e-9));
        }

        #[test]
        fn interval_is_invariant(e1 in event(), e2 in event(), z in -5.0..5.0f64, o2 in -3.0..3.0f64) {
            let b = Boost::with_offsets(z, o2, 0.0);
            let s0 = interval(&e1, &e2).s_squared;
            let s1 = interval(&boost(&e1, &b).unwrap(), &boost(&e2, &b).unwrap()).s_squared;
            // cosh(5)² amplifies rounding in the components, scale accordingly
            let scale = 100.0f64.max(z.cosh().powi(2) * 100.0);
            prop_assert!((s0 - s1).abs() <= 1e-9 * scale.max(s0.abs()));
        }

        #[test]
        fn boosts_compose_additively(e in event(), z1 in -2.5..2.5f64, z2 in -2.5..2.5f64) {
            let two = boost(&boost(&e, &Boost::new(z1)).unwrap(), &Boost::new(z2)).unwrap();
            let one = boost(&e, &Boost::new(z1 + z2)).unwrap();
            let scale = (z1.abs() + z2.abs()).cosh() * 10.0;
            prop_assert!((two.t - one.t).abs() <= 1e-9 * scale);
            prop_assert!((two.x1 - one.x1).abs() <= 1e-9 * scale);
        }

        #[test]
        fn light_cone_is_preserved(e in event(), dir in prop::bool::ANY, dt in 0.1..5.0f64, z in -3.0..3.0f64) {
            let sign = if dir { 1.0 } else { -1.0 };
            let other = Event::new(e.t + dt, e.x1 + sign * dt, e.x2, e.x3);
            prop_assert_eq!(interval(&e, &other).kind, IntervalKind::Lightlike);
            let b = Boost::new(z);
            let c = interval(&boost(&e, &b).unwrap(), &boost(&other, &b).unwrap());
            prop_assert_eq!(c.kind, IntervalKind::Lightlike);
        }
    }
}
