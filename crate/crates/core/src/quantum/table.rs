use super::spinor::Sign;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::kinematics::{Detector, Party};
use std::collections::BTreeMap;
use std::fmt;

/// One of the 2n mutually exclusive alternatives of a detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome {
    pub detector: Party,
    /// Zero-based index into the detector's axis list.
    pub axis_index: usize,
    pub sign: Sign,
}

impl Outcome {
    pub fn new(detector: Party, axis_index: usize, sign: Sign) -> Self {
        Outcome {
            detector,
            axis_index,
            sign,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]={}", self.detector, self.axis_index + 1, self.sign)
    }
}

/// Probabilities of the alternatives of one detector.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProbabilityTable {
    pub entries: BTreeMap<Outcome, f64>,
}

impl ProbabilityTable {
    pub fn get(&self, o: &Outcome) -> f64 {
        self.entries.get(o).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.values().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::State("probability outside [0, 1]".into()));
        }
        let t = self.total();
        if (t - 1.0).abs() > 1e-9 {
            return Err(Error::State(format!("probabilities sum to {t}")));
        }
        Ok(())
    }

    /// Number of axes covered by the table.
    pub fn axis_count(&self) -> usize {
        self.entries.keys().map(|o| o.axis_index + 1).max().unwrap_or(0)
    }
}

/// Born-rule table for `d` acting on `psi`: axis weight × spin probability.
pub fn born_probabilities(psi: &StateVector, d: &Detector) -> Result<ProbabilityTable> {
    psi.check_normalized()?;
    let mut entries = BTreeMap::new();
    for (i, (axis, w)) in d.axes.iter().zip(d.axis_weights.iter()).enumerate() {
        for sign in Sign::BOTH {
            entries.insert(Outcome::new(d.party, i, sign), w * psi.probability(d.party, axis, sign));
        }
    }
    let table = ProbabilityTable { entries };
    table.validate()?;
    Ok(table)
}

/// Table of the remaining detector after the other one reduced the state.
pub fn conditional_probabilities(psi_after: &StateVector, d: &Detector) -> Result<ProbabilityTable> {
    born_probabilities(psi_after, d)
}

#[derive(Debug, Clone, PartialEq)]
pub enum LhvViolation {
    /// p^{+i}·p^{−i} ≠ 0 for one detector.
    NonExclusive { detector: Party, axis_index: usize, product: f64 },
    /// p_A^{s,i} = 0 without p_B^{−s,i} = 0, or the converse.
    BrokenBiconditional { axis_index: usize, sign_a: Sign, p_a: f64, p_b: f64 },
}

impl fmt::Display for LhvViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LhvViolation::NonExclusive {
                detector,
                axis_index,
                product,
            } => write!(
                f,
                "p_{detector}^+{i} * p_{detector}^-{i} = {product:.9e} != 0",
                i = axis_index + 1
            ),
            LhvViolation::BrokenBiconditional {
                axis_index,
                sign_a,
                p_a,
                p_b,
            } => write!(
                f,
                "p_A^{sa}{i} = {p_a:.9e} but p_B^{sb}{i} = {p_b:.9e}",
                sa = sign_char(*sign_a),
                sb = sign_char(sign_a.flipped()),
                i = axis_index + 1
            ),
        }
    }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Plus => '+',
        Sign::Minus => '-',
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LhvReport {
    pub violations: Vec<LhvViolation>,
}

impl LhvReport {
    pub fn is_satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the constraints a deterministic local assignment must satisfy:
/// exclusive signs per axis on each side, and p_A^{i} = 0 ⇔ p_B^{−i} = 0.
pub fn lhv_constraints_check(table_a: &ProbabilityTable, table_b: &ProbabilityTable) -> LhvReport {
    const ZERO: f64 = 1e-12;
    let mut violations = Vec::new();
    let n = table_a.axis_count().max(table_b.axis_count());
    for (party, table) in [(Party::A, table_a), (Party::B, table_b)] {
        for i in 0..table.axis_count() {
            let product = table.get(&Outcome::new(party, i, Sign::Plus))
                * table.get(&Outcome::new(party, i, Sign::Minus));
            if product > ZERO {
                violations.push(LhvViolation::NonExclusive {
                    detector: party,
                    axis_index: i,
                    product,
                });
            }
        }
    }
    for i in 0..n {
        for sign_a in Sign::BOTH {
            let p_a = table_a.get(&Outcome::new(Party::A, i, sign_a));
            let p_b = table_b.get(&Outcome::new(Party::B, i, sign_a.flipped()));
            if (p_a <= ZERO) != (p_b <= ZERO) {
                violations.push(LhvViolation::BrokenBiconditional {
                    axis_index: i,
                    sign_a,
                    p_a,
                    p_b,
                });
            }
        }
    }
    LhvReport { violations }
}

#[cfg(test)]
mod tests {
    use super::super::spinor::Spinor;
    use super::super::state::{collapse_state, singlet};
    use super::*;
    use crate::kinematics::{Axis, Worldline};

    fn detector(party: Party, axes: Vec<Axis>) -> Detector {
        let n = axes.len();
        Detector::new(party, Worldline::at_rest(), 0.0, 1.0, 0.5, axes, vec![1.0 / n as f64; n]).unwrap()
    }

    fn table(party: Party, values: &[(usize, Sign, f64)]) -> ProbabilityTable {
        ProbabilityTable {
            entries: values
                .iter()
                .map(|&(i, s, p)| (Outcome::new(party, i, s), p))
                .collect(),
        }
    }

    /// ⟨ψ|Π ⊗ 1|ψ⟩ from an explicit 4×4 matrix, basis index 2b + a.
    fn expectation_4x4(psi: &StateVector, party: Party, axis: &Axis, sign: Sign) -> f64 {
        let p = super::super::spinor::projector(axis, sign);
        let v: Vec<_> = [Sign::Plus, Sign::Minus]
            .iter()
            .flat_map(|b| [Sign::Plus, Sign::Minus].map(|a| psi.coefficient(*b, a)))
            .collect();
        let mut total = num_complex::Complex64::new(0.0, 0.0);
        for r in 0..4 {
            for c in 0..4 {
                let (br, ar, bc, ac) = (r / 2, r % 2, c / 2, c % 2);
                let m = match party {
                    Party::A => if br == bc { p[ar][ac] } else { Default::default() },
                    Party::B => if ar == ac { p[br][bc] } else { Default::default() },
                };
                total += v[r].conj() * m * v[c];
            }
        }
        total.re
    }

    #[test]
    fn singlet_single_axis_is_even() {
        for axis in [Axis::Z, Axis::X, Axis::in_xz_plane(0.4)] {
            let t = born_probabilities(&singlet(), &detector(Party::A, vec![axis])).unwrap();
            for s in Sign::BOTH {
                let oracle = expectation_4x4(&singlet(), Party::A, &axis, s);
                assert!((oracle - 0.5).abs() < 1e-12);
                assert!((t.get(&Outcome::new(Party::A, 0, s)) - oracle).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenstate_is_certain() {
        let pp = StateVector::product(&Spinor::UP, &Spinor::UP).unwrap();
        let t = born_probabilities(&pp, &detector(Party::A, vec![Axis::Z])).unwrap();
        assert_eq!(t.get(&Outcome::new(Party::A, 0, Sign::Plus)), 1.0);
        assert_eq!(t.get(&Outcome::new(Party::A, 0, Sign::Minus)), 0.0);
    }

    #[test]
    fn two_axes_split_evenly() {
        let t = born_probabilities(&singlet(), &detector(Party::B, vec![Axis::Z, Axis::X])).unwrap();
        assert_eq!(t.entries.len(), 4);
        for p in t.entries.values() {
            assert!((p - 0.25).abs() < 1e-12);
        }
        assert!((t.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_follows_half_angle_rule() {
        let after = collapse_state(&singlet(), Party::B, &Axis::Z, Sign::Plus).unwrap();
        for (theta, expected) in [(0.0, 0.0), (std::f64::consts::PI, 1.0), (std::f64::consts::FRAC_PI_2, 0.5)] {
            let d = detector(Party::A, vec![Axis::in_xz_plane(theta)]);
            let t = conditional_probabilities(&after, &d).unwrap();
            let p = t.get(&Outcome::new(Party::A, 0, Sign::Plus));
            assert!((p - expected).abs() < 1e-12, "θ={theta}: {p}");
            assert!((p - (theta / 2.0f64).sin().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn lhv_examples() {
        let ta = table(Party::A, &[(0, Sign::Plus, 1.0), (0, Sign::Minus, 0.0)]);
        let tb = table(Party::B, &[(0, Sign::Plus, 0.0), (0, Sign::Minus, 1.0)]);
        assert!(lhv_constraints_check(&ta, &tb).is_satisfied());

        for n in 1..=3 {
            let axes: Vec<Axis> = (0..n).map(|i| Axis::in_xz_plane(i as f64 * 0.7)).collect();
            let ta = born_probabilities(&singlet(), &detector(Party::A, axes.clone())).unwrap();
            let tb = born_probabilities(&singlet(), &detector(Party::B, axes)).unwrap();
            let r = lhv_constraints_check(&ta, &tb);
            let exclusive: Vec<_> = r
                .violations
                .iter()
                .filter(|v| matches!(v, LhvViolation::NonExclusive { .. }))
                .collect();
            // every axis on both sides: 1/(2n) · 1/(2n) ≠ 0
            assert_eq!(exclusive.len(), 2 * n);
            if let LhvViolation::NonExclusive { product, .. } = exclusive[0] {
                assert!((product - 1.0 / (4.0 * (n * n) as f64)).abs() < 1e-12);
            }
        }

        let ta = table(Party::A, &[(0, Sign::Plus, 0.0), (0, Sign::Minus, 1.0)]);
        let tb = table(Party::B, &[(0, Sign::Plus, 0.5), (0, Sign::Minus, 0.5)]);
        let r = lhv_constraints_check(&ta, &tb);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, LhvViolation::BrokenBiconditional { sign_a: Sign::Plus, .. })));
    }
}
