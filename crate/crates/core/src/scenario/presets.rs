//! Scenario files shipped with the crate.

use super::config::{parse_config, ScenarioConfig};

pub const FIGURE1_CFG: &str = include_str!("../../../../presets/figure1.cfg");
pub const S2_LIGHTLIKE_CFG: &str = include_str!("../../../../presets/s2_lightlike.cfg");
pub const CHSH_CFG: &str = include_str!("../../../../presets/chsh.cfg");

/// A at rest deciding at (−1, 0); B at rapidity 0.5 deciding at rest time
/// −0.933; source derived from proper times 0.8 and 0.664; blc policy.
pub fn figure1() -> ScenarioConfig {
    parse_config(FIGURE1_CFG).expect("shipped preset parses")
}

/// The figure-1 detectors fed by a lightlike source.
pub fn s2_lightlike() -> ScenarioConfig {
    parse_config(S2_LIGHTLIKE_CFG).expect("shipped preset parses")
}

/// Figure-1 geometry with a 2×2 CHSH design at optimal angles.
pub fn chsh() -> ScenarioConfig {
    parse_config(CHSH_CFG).expect("shipped preset parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Party;
    use crate::scenario::resolve_geometry;

    #[test]
    fn figure_one_geometry() {
        let cfg = figure1();
        assert_eq!(cfg.detector_b.worldline.zeta, 0.5);
        // cosh ζ from the printed frame times 1.128 / 1.000
        assert!((1.128f64.acosh() - 0.5).abs() < 0.005);
        let g = resolve_geometry(&cfg).unwrap();
        assert!((g.nominal_a.t + 1.0).abs() < 1e-12 && g.nominal_a.x1 == 0.0);
        assert!((g.nominal_b.t + 1.052).abs() < 0.002);
        assert!((g.tau_a - 0.8).abs() < 1e-9 && (g.tau_b - 0.664).abs() < 1e-9);
        assert!((g.source.t + 1.809).abs() < 0.005 && (g.source.x1 + 0.122).abs() < 0.005);
    }

    #[test]
    fn lightlike_preset() {
        let cfg = s2_lightlike();
        let g = resolve_geometry(&cfg).unwrap();
        assert!(g.branch(Party::A).is_lightlike() && g.branch(Party::B).is_lightlike());
        let (sa, sb) = g.signal_speeds();
        assert!((sa - 1.0).abs() < 1e-9 && (sb - 1.0).abs() < 1e-9);
        // proper times to the decisions are small but positive
        assert!(g.tau_a > 0.0 && g.tau_a < 0.05);
        assert!(g.tau_b > 0.0 && g.tau_b < 0.05);
    }

    #[test]
    fn chsh_preset_is_a_two_by_two_design() {
        let cfg = chsh();
        assert_eq!(cfg.detector_a.axes.len(), 2);
        assert_eq!(cfg.detector_b.axes.len(), 2);
    }
}
