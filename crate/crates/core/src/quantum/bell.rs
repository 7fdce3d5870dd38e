//! CHSH harness built on sequential reduction.

use super::spinor::Sign;
use super::state::{collapse_state, singlet, StateVector};
use crate::error::Result;
use crate::kinematics::{Axis, Party};
use crate::rng::trial_rng;
use rand::Rng;
use rayon::prelude::*;

/// Local-hidden-variable bound on |S|.
pub const LHV_BOUND: f64 = 2.0;

/// Draws a sign with P(+1) = `p_plus`.
pub fn sample_sign<R: Rng + ?Sized>(p_plus: f64, rng: &mut R) -> Sign {
    if rng.random::<f64>() < p_plus {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Measures `first` then `second` on `psi`, reducing the state in between.
pub fn measure_sequential<R: Rng + ?Sized>(
    psi: &StateVector,
    first: (Party, &Axis),
    second: (Party, &Axis),
    rng: &mut R,
) -> Result<(Sign, Sign, StateVector)> {
    let s1 = sample_sign(psi.probability(first.0, first.1, Sign::Plus), rng);
    let after = collapse_state(psi, first.0, first.1, s1)?;
    let s2 = sample_sign(after.probability(second.0, second.1, Sign::Plus), rng);
    Ok((s1, s2, after))
}

/// Singlet correlation E(â, b̂) = −â·b̂.
pub fn singlet_correlation(a: &Axis, b: &Axis) -> f64 {
    -a.dot(b)
}

/// Correlation from the joint probabilities of an arbitrary state.
pub fn exact_correlation(psi: &StateVector, a: &Axis, b: &Axis) -> f64 {
    let mut e = 0.0;
    for sa in Sign::BOTH {
        for sb in Sign::BOTH {
            e += sa.value() * sb.value() * psi.joint_probability(a, sa, b, sb);
        }
    }
    e
}

/// S = E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′) from the four correlators in
/// the order (a,b), (a,b′), (a′,b), (a′,b′).
pub fn chsh_combination(e: [f64; 4]) -> f64 {
    e[0] - e[1] + e[2] + e[3]
}

/// Settings that reach 2√2 for the singlet with the sign convention above:
/// a = ẑ, a′ = x̂, b = −(x̂ + ẑ)/√2, b′ = (ẑ − x̂)/√2.
pub fn optimal_axes() -> ([Axis; 2], [Axis; 2]) {
    use std::f64::consts::FRAC_PI_4;
    (
        [Axis::Z, Axis::X],
        [Axis::in_xz_plane(5.0 * FRAC_PI_4), Axis::in_xz_plane(-FRAC_PI_4)],
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChshResult {
    pub estimate: f64,
    pub analytic: f64,
    /// Monte Carlo correlators in the order (a,b), (a,b′), (a′,b), (a′,b′).
    pub correlators: [f64; 4],
    pub analytic_correlators: [f64; 4],
    pub trials_per_setting: [u64; 4],
    /// One standard error of the estimate.
    pub standard_error: f64,
}

impl ChshResult {
    pub fn violation_margin(&self) -> f64 {
        self.estimate.abs() - LHV_BOUND
    }
}

/// Monte Carlo CHSH estimate on the singlet.
///
/// Trial `i` uses setting `i mod 4`; A is measured first, then B on the
/// reduced state. Each trial has its own random stream.
pub fn chsh_value(axes_a: &[Axis; 2], axes_b: &[Axis; 2], trials: u64, seed: u64) -> Result<ChshResult> {
    let settings = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let psi = singlet();
    // (sum of products, count) per setting
    let acc = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<[(i64, u64); 4]> {
            let slot = (i % 4) as usize;
            let (ia, ib) = settings[slot];
            let mut rng = trial_rng(seed, i);
            let (sa, sb, _) = measure_sequential(&psi, (Party::A, &axes_a[ia]), (Party::B, &axes_b[ib]), &mut rng)?;
            let mut out = [(0i64, 0u64); 4];
            out[slot] = ((sa.value() * sb.value()) as i64, 1);
            Ok(out)
        })
        .try_reduce(
            || [(0i64, 0u64); 4],
            |mut x, y| {
                for k in 0..4 {
                    x[k].0 += y[k].0;
                    x[k].1 += y[k].1;
                }
                Ok(x)
            },
        )?;

    let mut correlators = [0.0; 4];
    let mut analytic_correlators = [0.0; 4];
    let mut variance = 0.0;
    let mut trials_per_setting = [0u64; 4];
    for (k, &(ia, ib)) in settings.iter().enumerate() {
        let (sum, n) = acc[k];
        trials_per_setting[k] = n;
        let e = if n > 0 { sum as f64 / n as f64 } else { 0.0 };
        correlators[k] = e;
        analytic_correlators[k] = singlet_correlation(&axes_a[ia], &axes_b[ib]);
        if n > 0 {
            variance += (1.0 - e * e) / n as f64;
        }
    }
    Ok(ChshResult {
        estimate: chsh_combination(correlators),
        analytic: chsh_combination(analytic_correlators),
        correlators,
        analytic_correlators,
        trials_per_setting,
        standard_error: variance.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_axes_reach_tsirelson() {
        let (a, b) = optimal_axes();
        // oracle: enumerate the four correlators from joint probabilities
        let psi = singlet();
        let e = [
            exact_correlation(&psi, &a[0], &b[0]),
            exact_correlation(&psi, &a[0], &b[1]),
            exact_correlation(&psi, &a[1], &b[0]),
            exact_correlation(&psi, &a[1], &b[1]),
        ];
        let s = chsh_combination(e);
        assert!((s - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((s - 2.8284).abs() < 1e-4);
        let r = chsh_value(&a, &b, 4, 1).unwrap();
        assert!((r.analytic - s).abs() < 1e-12);
    }

    #[test]
    fn equal_axes_give_minus_two() {
        let z = [Axis::Z, Axis::Z];
        let r = chsh_value(&z, &z, 400, 3).unwrap();
        assert!((r.analytic + 2.0).abs() < 1e-12);
        // perfect anti-correlation makes the estimate exact as well
        assert!((r.estimate + 2.0).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_converges() {
        let (a, b) = optimal_axes();
        let r = chsh_value(&a, &b, 200_000, 11).unwrap();
        assert!((r.estimate - r.analytic).abs() < 5.0 * r.standard_error.max(1e-3), "{r:?}");
        assert_eq!(r.trials_per_setting.iter().sum::<u64>(), 200_000);
    }

    #[test]
    fn estimate_is_reproducible() {
        let (a, b) = optimal_axes();
        assert_eq!(chsh_value(&a, &b, 1000, 5).unwrap(), chsh_value(&a, &b, 1000, 5).unwrap());
        assert_ne!(chsh_value(&a, &b, 1000, 5).unwrap().estimate, chsh_value(&a, &b, 1000, 6).unwrap().estimate);
    }
}
