use crate::kinematics::Axis;
use num_complex::Complex64;
use std::fmt;

pub type C = Complex64;
pub type Matrix2 = [[C; 2]; 2];

/// Measurement result ±1 along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Two-component spin state in the (|+⟩, |−⟩) basis along ẑ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor(pub [C; 2]);

impl Spinor {
    pub const UP: Spinor = Spinor([C::new(1.0, 0.0), C::new(0.0, 0.0)]);
    pub const DOWN: Spinor = Spinor([C::new(0.0, 0.0), C::new(1.0, 0.0)]);

    pub fn new(plus: C, minus: C) -> Self {
        Spinor([plus, minus])
    }

    pub fn real(plus: f64, minus: f64) -> Self {
        Spinor([C::new(plus, 0.0), C::new(minus, 0.0)])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn inner(&self, other: &Spinor) -> C {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// Normalized copy whose first non-negligible amplitude is real positive.
    pub fn canonical(&self) -> Option<Spinor> {
        let n = self.norm_sqr().sqrt();
        if !(n > 1e-300) {
            return None;
        }
        let mut v = [self.0[0] / n, self.0[1] / n];
        canonicalize_phase(&mut v);
        Some(Spinor(v))
    }

    /// Equal up to a global phase, after normalization.
    pub fn same_ray(&self, other: &Spinor, tol: f64) -> bool {
        match (self.canonical(), other.canonical()) {
            (Some(a), Some(b)) => (a.0[0] - b.0[0]).norm() <= tol && (a.0[1] - b.0[1]).norm() <= tol,
            _ => false,
        }
    }

    pub fn apply(&self, m: &Matrix2) -> Spinor {
        Spinor([
            m[0][0] * self.0[0] + m[0][1] * self.0[1],
            m[1][0] * self.0[0] + m[1][1] * self.0[1],
        ])
    }
}

/// Rotates the phase of `v` so its first amplitude above 1e-12 in modulus is
/// real and positive.
pub(crate) fn canonicalize_phase(v: &mut [C]) {
    if let Some(lead) = v.iter().find(|c| c.norm() > 1e-12).copied() {
        let phase = lead.conj() / lead.norm();
        for c in v.iter_mut() {
            *c *= phase;
            if c.re.abs() < 1e-15 {
                c.re = 0.0;
            }
            if c.im.abs() < 1e-15 {
                c.im = 0.0;
            }
        }
    }
}

/// Π± = (1 ± â·σ)/2.
pub fn projector(axis: &Axis, sign: Sign) -> Matrix2 {
    let [nx, ny, nz] = axis.components();
    let s = sign.value();
    [
        [C::new(0.5 * (1.0 + s * nz), 0.0), C::new(0.5 * s * nx, -0.5 * s * ny)],
        [C::new(0.5 * s * nx, 0.5 * s * ny), C::new(0.5 * (1.0 - s * nz), 0.0)],
    ]
}

/// Eigenvector of â·σ with eigenvalue `sign`, phase-canonical.
pub fn eigenvector(axis: &Axis, sign: Sign) -> Spinor {
    let p = projector(axis, sign);
    let col0 = Spinor([p[0][0], p[1][0]]);
    let col1 = Spinor([p[0][1], p[1][1]]);
    let best = if col0.norm_sqr() >= col1.norm_sqr() { col0 } else { col1 };
    best.canonical().expect("projector of a unit axis has rank one")
}
