use anyhow::Result;
use boostlab_core::analysis::rlgmt;
use boostlab_core::relativity::{build_rho1, BoostParams};
use rayon::prelude::*;

use super::{Check, Outcome};
use crate::config::ScenarioConfig;
use crate::output::{fmt_f64, CsvTable};

pub const DEFAULT_RAPIDITIES: [f64; 4] = [0.0, 0.5, 0.8, 1.0];
pub const FILE: &str = "realignment_curve.csv";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub x: f64,
    pub xi: f64,
    pub rlgmt: f64,
}

pub fn default_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 300.0).collect()
}

/// Values below this magnitude have no sign.
const SIGN_FLOOR: f64 = 1e-12;

/// Sign changes along a curve, zeros skipped, and the first `x` where the
/// curve turns positive after being negative.
pub fn sign_changes(curve: &[(f64, f64)]) -> (usize, Option<f64>) {
    let mut last: Option<bool> = None;
    let mut count = 0;
    let mut crossing = None;
    for &(x, v) in curve {
        if v.abs() <= SIGN_FLOOR {
            continue;
        }
        let pos = v > 0.0;
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
                if pos && crossing.is_none() {
                    crossing = Some(x);
                }
            }
        }
        last = Some(pos);
    }
    (count, crossing)
}

pub fn compute(cfg: &ScenarioConfig) -> Result<Vec<CurveRow>> {
    let rapidities = cfg.rapidities_or(&DEFAULT_RAPIDITIES);
    let grid = cfg.x_grid_or(&default_grid());
    let dir = cfg.unit_direction();
    let jobs: Vec<(f64, f64)> = rapidities
        .iter()
        .flat_map(|&xi| grid.iter().map(move |&x| (xi, x)))
        .collect();
    jobs.par_iter()
        .map(|&(xi, x)| {
            let b = BoostParams::new(dir, xi)?;
            let spin = build_rho1(x, cfg.energy)?.boosted(&b)?.spin_marginal();
            Ok(CurveRow {
                x,
                xi,
                rlgmt: rlgmt(&spin)?,
            })
        })
        .collect()
}

/// Reference properties of the family of curves, sorted by rapidity.
pub fn checks(rows: &[CurveRow]) -> Vec<Check> {
    let mut rapidities: Vec<f64> = rows.iter().map(|r| r.xi).collect();
    rapidities.sort_by(f64::total_cmp);
    rapidities.dedup();
    let curve = |xi: f64| -> Vec<(f64, f64)> {
        let mut c: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.xi == xi)
            .map(|r| (r.x, r.rlgmt))
            .collect();
        c.sort_by(|a, b| a.0.total_cmp(&b.0));
        c
    };
    let mut out = Vec::new();
    if rapidities.contains(&0.0) {
        let bad: Vec<f64> = curve(0.0)
            .into_iter()
            .filter(|&(x, v)| x > 0.01 && v <= 0.0)
            .map(|p| p.0)
            .collect();
        out.push(Check::new(
            "unboosted_positive",
            bad.is_empty(),
            format!("non-positive at {} grid points above x = 0.01", bad.len()),
        ));
    }
    let mut crossings = Vec::new();
    for &xi in rapidities.iter().filter(|&&xi| xi > 0.0) {
        let (n, x0) = sign_changes(&curve(xi));
        out.push(Check::new(
            format!("single_sign_change_xi_{xi}"),
            n == 1 && x0.is_some(),
            format!("{n} sign changes, up-crossing at {x0:?}"),
        ));
        crossings.push(x0);
    }
    if crossings.len() > 1 {
        let ok = crossings.iter().all(Option::is_some) && crossings.windows(2).all(|w| w[0] < w[1]);
        out.push(Check::new(
            "crossing_increases_with_xi",
            ok,
            format!("{crossings:?}"),
        ));
    }
    if rapidities.len() > 1 {
        let mut violations = 0;
        for w in rapidities.windows(2) {
            for (a, b) in curve(w[0]).iter().zip(curve(w[1]).iter()) {
                if b.1 > a.1 + 1e-12 {
                    violations += 1;
                }
            }
        }
        out.push(Check::new(
            "nonincreasing_in_xi",
            violations == 0,
            format!("{violations} grid points increase with rapidity"),
        ));
    }
    out
}

pub fn render(rows: &[CurveRow]) -> CsvTable {
    let mut t = CsvTable::new(["x", "xi", "rlgmt"]);
    for r in rows {
        t.push(vec![fmt_f64(r.x), fmt_f64(r.xi), fmt_f64(r.rlgmt)]);
    }
    t
}

/// CSV `x, xi, rlgmt` of the boosted spin marginal of `ρ₁(x)`. Reference
/// checks run only for the default grid, rapidities and frame.
pub fn realignment_curve(cfg: &ScenarioConfig) -> Result<Outcome<Vec<CurveRow>>> {
    let rows = compute(cfg)?;
    let artifact = cfg.out.join(FILE);
    render(&rows).write(&artifact)?;
    let reference = cfg.is_reference_frame() && cfg.rapidities.is_none() && cfg.x_grid.is_none();
    let checks = if reference { checks(&rows) } else { Vec::new() };
    Ok(Outcome {
        artifact,
        report: rows,
        checks,
    })
}
