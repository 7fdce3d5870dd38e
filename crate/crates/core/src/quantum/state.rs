use super::spinor::{canonicalize_phase, projector, Matrix2, Sign, Spinor, C};
use crate::error::{Error, Result};
use crate::kinematics::{Axis, Party};
use std::fmt;

const NORM_TOL: f64 = 1e-9;

/// Pure state of the two spins.
///
/// Stored as a 2×2 coefficient matrix `m[b][a]` with index 0 for |+⟩ and 1
/// for |−⟩; the B factor comes first. [`StateVector::amplitudes`] exposes
/// the ordered basis |−⟩_B|+⟩_A, |+⟩_B|−⟩_A, |+⟩_B|+⟩_A, |−⟩_B|−⟩_A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    m: [[C; 2]; 2],
}

impl StateVector {
    /// Builds a state from amplitudes in the documented basis order.
    pub fn from_amplitudes(amps: [C; 4]) -> Result<Self> {
        let s = StateVector {
            m: [[amps[2], amps[1]], [amps[0], amps[3]]],
        };
        s.check_normalized()?;
        Ok(s)
    }

    pub fn amplitudes(&self) -> [C; 4] {
        [self.m[1][0], self.m[0][1], self.m[0][0], self.m[1][1]]
    }

    /// Coefficient of |b⟩_B|a⟩_A.
    pub fn coefficient(&self, b: Sign, a: Sign) -> C {
        self.m[idx(b)][idx(a)]
    }

    pub fn product(b: &Spinor, a: &Spinor) -> Result<Self> {
        let mut m = [[C::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = b.0[i] * a.0[j];
            }
        }
        let s = StateVector { m };
        s.check_normalized()?;
        Ok(s)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.m.iter().flatten().map(|c| c.norm_sqr()).sum()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL || !n.is_finite() {
            return Err(Error::State(format!("state norm² is {n}, expected 1")));
        }
        Ok(())
    }

    /// |det m|: zero exactly for product states.
    pub fn entanglement_measure(&self) -> f64 {
        (self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]).norm()
    }

    /// Schmidt rank one within `tol`.
    pub fn is_product(&self, tol: f64) -> bool {
        self.entanglement_measure() <= tol
    }

    /// Factor of a product state belonging to `party`, phase-canonical.
    pub fn factor(&self, party: Party) -> Result<Spinor> {
        if !self.is_product(1e-9) {
            return Err(Error::State("state does not factorize".into()));
        }
        // the dominant row or column carries the factor
        let candidates: Vec<Spinor> = match party {
            Party::A => (0..2).map(|b| Spinor([self.m[b][0], self.m[b][1]])).collect(),
            Party::B => (0..2).map(|a| Spinor([self.m[0][a], self.m[1][a]])).collect(),
        };
        candidates
            .into_iter()
            .max_by(|x, y| x.norm_sqr().partial_cmp(&y.norm_sqr()).unwrap())
            .and_then(|s| s.canonical())
            .ok_or_else(|| Error::State("zero state has no factors".into()))
    }

    /// Applies a single-spin operator to the factor of `party`.
    pub fn apply_local(&self, party: Party, op: &Matrix2) -> StateVector {
        let mut out = [[C::new(0.0, 0.0); 2]; 2];
        for b in 0..2 {
            for a in 0..2 {
                out[b][a] = match party {
                    Party::A => op[a][0] * self.m[b][0] + op[a][1] * self.m[b][1],
                    Party::B => op[b][0] * self.m[0][a] + op[b][1] * self.m[1][a],
                };
            }
        }
        StateVector { m: out }
    }

    fn inner(&self, other: &StateVector) -> C {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// ⟨ψ|Π|ψ⟩ for the projector of `sign` along `axis` on `party`'s spin.
    pub fn probability(&self, party: Party, axis: &Axis, sign: Sign) -> f64 {
        let projected = self.apply_local(party, &projector(axis, sign));
        self.inner(&projected).re.clamp(0.0, 1.0)
    }

    /// Joint probability of a result pair, from the product projector.
    pub fn joint_probability(&self, axis_a: &Axis, sign_a: Sign, axis_b: &Axis, sign_b: Sign) -> f64 {
        let projected = self
            .apply_local(Party::A, &projector(axis_a, sign_a))
            .apply_local(Party::B, &projector(axis_b, sign_b));
        self.inner(&projected).re.clamp(0.0, 1.0)
    }

    /// Contracts `party`'s factor with ⟨factor| and returns the normalized,
    /// phase-canonical state of the other spin.
    pub fn contract(&self, party: Party, factor: &Spinor) -> Result<Spinor> {
        let raw = match party {
            Party::A => Spinor([
                factor.0[0].conj() * self.m[0][0] + factor.0[1].conj() * self.m[0][1],
                factor.0[0].conj() * self.m[1][0] + factor.0[1].conj() * self.m[1][1],
            ]),
            Party::B => Spinor([
                factor.0[0].conj() * self.m[0][0] + factor.0[1].conj() * self.m[1][0],
                factor.0[0].conj() * self.m[0][1] + factor.0[1].conj() * self.m[1][1],
            ]),
        };
        if raw.norm_sqr() <= 1e-24 {
            return Err(Error::ImpossibleOutcome(format!(
                "contraction with the {party} factor vanishes"
            )));
        }
        Ok(raw.canonical().expect("non-zero spinor"))
    }

    /// Copy with the first non-negligible amplitude (documented basis order)
    /// made real positive.
    pub fn canonical(&self) -> StateVector {
        let mut amps = self.amplitudes();
        canonicalize_phase(&mut amps);
        StateVector {
            m: [[amps[2], amps[1]], [amps[0], amps[3]]],
        }
    }

    /// Equal up to a global phase.
    pub fn same_ray(&self, other: &StateVector, tol: f64) -> bool {
        let (a, b) = (self.canonical().amplitudes(), other.canonical().amplitudes());
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol)
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = ["|-B+A>", "|+B-A>", "|+B+A>", "|-B-A>"];
        let parts: Vec<String> = self
            .amplitudes()
            .iter()
            .zip(labels)
            .map(|(c, l)| format!("({:.6}{:+.6}i){l}", c.re, c.im))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn idx(s: Sign) -> usize {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// 2^{-1/2}(|−⟩_B|+⟩_A − |+⟩_B|−⟩_A).
pub fn singlet() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector {
        m: [[C::new(0.0, 0.0), C::new(-h, 0.0)], [C::new(h, 0.0), C::new(0.0, 0.0)]],
    }
}

/// Projects `party`'s spin onto `sign` along `axis` and renormalizes.
pub fn collapse_state(psi: &StateVector, party: Party, axis: &Axis, sign: Sign) -> Result<StateVector> {
    psi.check_normalized()?;
    let projected = psi.apply_local(party, &projector(axis, sign));
    let p = projected.norm_sqr();
    if p <= 1e-24 {
        return Err(Error::ImpossibleOutcome(format!(
            "{party} cannot obtain {sign} along {:?}",
            axis.components()
        )));
    }
    let n = p.sqrt();
    let mut m = projected.m;
    for c in m.iter_mut().flatten() {
        *c /= n;
    }
    Ok(StateVector { m }.canonical())
}

/// B-branch (or A-branch) factor before the branch passes the reduction
/// surface: the partial overlap of `psi_s` with the reduced factor of
/// the other branch, `contracted_party`.
pub fn intermediate_state(psi_s: &StateVector, contracted_party: Party, factor: &Spinor) -> Result<Spinor> {
    psi_s.check_normalized()?;
    psi_s.contract(contracted_party, factor)
}
