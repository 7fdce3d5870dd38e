//! Consistency of several collapse policies over a (ζ, x⁰_A1) grid.

use crate::collapse::{inconsistency_scan, CollapsePolicy, ScanReport};
use crate::error::{Error, Result};
use std::fmt::{self, Write as _};

/// Parses `a:b:n` into n evenly spaced values from a to b inclusive.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |m: &str| Error::semantic("grid", format!("`{spec}`: {m}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(bad("expected start:stop:count"));
    };
    let a: f64 = a.trim().parse().map_err(|_| bad("start is not a number"))?;
    let b: f64 = b.trim().parse().map_err(|_| bad("stop is not a number"))?;
    let n: usize = n.trim().parse().map_err(|_| bad("count is not a positive integer"))?;
    if !a.is_finite() || !b.is_finite() {
        return Err(bad("bounds must be finite"));
    }
    match n {
        0 => Err(bad("count must be at least 1")),
        1 if a != b => Err(bad("a single point needs start = stop")),
        1 => Ok(vec![a]),
        _ => Ok((0..n)
            .map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
            .collect()),
    }
}

/// Instantaneous, tilted planes of slope 0.3, 0.6, 0.9 and 0.99, and blc,
/// plus `extra` when it is not already among them.
pub fn standard_policies(extra: Option<CollapsePolicy>) -> Vec<CollapsePolicy> {
    let mut v = vec![CollapsePolicy::Instantaneous];
    v.extend([0.3, 0.6, 0.9, 0.99].map(|s| CollapsePolicy::TiltedPlane { slope: s }));
    v.push(CollapsePolicy::BackwardLightCone);
    if let Some(p) = extra {
        if !v.contains(&p) {
            v.push(p);
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub scans: Vec<ScanReport>,
}

impl ConsistencyReport {
    pub fn scan(&self, policy: CollapsePolicy) -> Option<&ScanReport> {
        self.scans.iter().find(|s| s.policy == policy)
    }

    /// `Some(true)` when blc is consistent on the whole grid and every
    /// other policy fails somewhere; `None` when blc was not scanned.
    pub fn blc_only_consistent(&self) -> Option<bool> {
        let blc = self.scan(CollapsePolicy::BackwardLightCone)?;
        Some(
            blc.all_consistent()
                && self
                    .scans
                    .iter()
                    .filter(|s| s.policy != CollapsePolicy::BackwardLightCone)
                    .all(|s| !s.all_consistent()),
        )
    }
}

pub fn consistency_report(policies: &[CollapsePolicy], zetas: &[f64], times: &[f64]) -> Result<ConsistencyReport> {
    if zetas.is_empty() || times.is_empty() {
        return Err(Error::Domain("consistency grids must be nonempty".into()));
    }
    for p in policies {
        p.validate()?;
    }
    Ok(ConsistencyReport {
        scans: policies.iter().map(|&p| inconsistency_scan(p, zetas, times)).collect(),
    })
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "policy\tconsistent\ttotal\tfraction\tfirst_violation_zeta")?;
        for s in &self.scans {
            let first = s.first_violation_zeta().map_or("-".to_string(), |z| format!("{z:.6}"));
            writeln!(
                f,
                "{}\t{}\t{}\t{:.6}\t{first}",
                s.policy.tag(),
                s.consistent_count(),
                s.cells.len(),
                s.fraction_consistent()
            )?;
        }
        let summary = match self.blc_only_consistent() {
            Some(true) => "confirmed",
            Some(false) => "refuted",
            None => "not evaluated",
        };
        writeln!(f, "blc-only consistency over the grid: {summary}")
    }
}

/// Grid of one scan: one row per ζ, `.` for consistent cells, `x` for
/// inconsistent ones, columns in x⁰_A1 order.
pub fn render_scan(s: &ScanReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "policy {}", s.policy.tag());
    let _ = writeln!(
        out,
        "x0_A1 from {:.6} to {:.6} ({} points)",
        s.times.first().copied().unwrap_or(f64::NAN),
        s.times.last().copied().unwrap_or(f64::NAN),
        s.times.len()
    );
    for (i, z) in s.zetas.iter().enumerate() {
        let row: String = (0..s.times.len())
            .map(|j| if s.cell(i, j).verdict().is_consistent() { '.' } else { 'x' })
            .collect();
        let _ = writeln!(out, "zeta={z:>10.6} {row}");
    }
    let _ = writeln!(out, "consistent {}/{}", s.consistent_count(), s.cells.len());
    if let Some(z) = s.first_violation_zeta() {
        let _ = writeln!(out, "first violation at zeta={z:.6}");
    }
    out
}
