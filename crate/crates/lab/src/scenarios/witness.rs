use anyhow::Result;
use boostlab_core::analysis::{
    affine_fit, boost_witness, calibrate, mub_witness_spin, pairing, separable_bounds,
    simplex_edge_grid, spin_traced, witness_total, AffineFit, BoostSpec, BoundMethod, Calibration,
    SeesawOptions, SeparableWindow, WitnessReport, WitnessTolerances, CALIBRATION_TOL,
};
use boostlab_core::linalg::ComplexMatrix;
use boostlab_core::relativity::{build_rho1, momentum_pair, BoostParams};
use rayon::prelude::*;
use serde::Serialize;

use super::{Check, Outcome};
use crate::config::ScenarioConfig;
use crate::output::write_json;

pub const DEFAULT_RAPIDITY: f64 = 0.8;
pub const FILE: &str = "witness_report.json";
/// Rapidities over which the total-space fit must not move.
pub const INVARIANCE_RAPIDITIES: [f64; 4] = [0.0, 0.5, 0.8, 1.0];
/// Window quoted for the total-space pairing in the published analysis.
pub const QUOTED_TOTAL_WINDOW: (f64, f64) = (-0.75, 0.75);
pub const REFERENCE_BOOSTED_FIT: (f64, f64) = (1.694, 0.641);
pub const REFERENCE_BOOSTED_WINDOW: (f64, f64) = (0.763, 1.985);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fits {
    pub total: AffineFit,
    pub spin_unboosted: AffineFit,
    pub spin_boosted: AffineFit,
    /// Total-space fit with witness and state both boosted, per rapidity.
    pub total_by_rapidity: Vec<(f64, AffineFit)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Windows {
    pub total: SeparableWindow,
    pub spin_unboosted: SeparableWindow,
    pub spin_boosted: SeparableWindow,
    pub quoted_total: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessDocument {
    pub convention_id: String,
    pub calibration: Calibration,
    pub energy: f64,
    pub boost: BoostSpec,
    pub x_grid: Vec<f64>,
    pub fits: Fits,
    pub windows: Windows,
    /// Boosted spin-traced pairing at each grid point.
    pub reports: Vec<WitnessReport>,
    pub total_inside_window: bool,
    pub checks: Vec<Check>,
}

fn fit_of(xs: &[f64], f: impl Fn(f64) -> Result<f64> + Sync) -> Result<(AffineFit, Vec<f64>)> {
    let ys = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;
    let pts: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    Ok((affine_fit(&pts)?, ys))
}

fn window_check(name: &str, w: &SeparableWindow, expected: (f64, f64), tol: f64) -> [Check; 2] {
    [
        Check::close(format!("{name}_lower"), w.lower, expected.0, tol),
        Check::close(format!("{name}_upper"), w.upper, expected.1, tol),
    ]
}

fn fit_check(name: &str, f: &AffineFit, expected: (f64, f64), tol: f64) -> Check {
    Check::new(
        name,
        f.matches(expected.0, expected.1, tol),
        format!(
            "{} + {} x vs {} + {} x ± {tol}",
            f.intercept, f.slope, expected.0, expected.1
        ),
    )
}

/// Calibrated MUB witness: affine fits of its pairings and separable windows.
pub fn witness_report(cfg: &ScenarioConfig) -> Result<Outcome<WitnessDocument>> {
    let xi = cfg.rapidities_or(&[DEFAULT_RAPIDITY])[0];
    let b = BoostParams::new(cfg.unit_direction(), xi)?;
    let xs = cfg.x_grid_or(&simplex_edge_grid(11));
    let cal = calibrate::<f64>(cfg.energy)?;
    let w = mub_witness_spin::<f64>(&cal.convention)?;
    let wt = witness_total(&w)?;
    let momenta = momentum_pair(cfg.energy)?;
    let wt_boosted = boost_witness(&wt, &momenta, &b)?;
    let w_boosted: ComplexMatrix<f64> = spin_traced(&wt_boosted)?;

    let (total, total_values) = fit_of(&xs, |x| {
        Ok(build_rho1(x, cfg.energy)?.density().expectation(&wt)?)
    })?;
    let (spin_unboosted, _) = fit_of(&xs, |x| {
        Ok(pairing(&w, &build_rho1(x, cfg.energy)?.spin_marginal())?)
    })?;
    let (spin_boosted, boosted_values) = fit_of(&xs, |x| {
        Ok(pairing(
            &w_boosted,
            &build_rho1(x, cfg.energy)?.boosted(&b)?.spin_marginal(),
        )?)
    })?;
    let mut total_by_rapidity = Vec::new();
    for &r in &INVARIANCE_RAPIDITIES {
        let br = BoostParams::new(cfg.unit_direction(), r)?;
        let wr = boost_witness(&wt, &momenta, &br)?;
        let (f, _) = fit_of(&xs, |x| {
            Ok(build_rho1(x, cfg.energy)?
                .boosted(&br)?
                .density()
                .expectation(&wr)?)
        })?;
        total_by_rapidity.push((r, f));
    }

    let seesaw = SeesawOptions {
        seed: cfg.seed,
        ..SeesawOptions::default()
    };
    let windows = Windows {
        total: separable_bounds(&wt, [4, 9], &seesaw)?,
        spin_unboosted: separable_bounds(&w, [3, 3], &seesaw)?,
        spin_boosted: separable_bounds(&w_boosted, [3, 3], &seesaw)?,
        quoted_total: QUOTED_TOTAL_WINDOW,
    };
    let tolerances = WitnessTolerances {
        seesaw_convergence: seesaw.tol,
        seesaw_restarts: seesaw.restarts,
        calibration: CALIBRATION_TOL,
    };
    let reports = boosted_values
        .iter()
        .map(|&v| {
            WitnessReport::new(
                v,
                (windows.spin_boosted.lower, windows.spin_boosted.upper),
                BoundMethod::Seesaw,
                cal.convention_id.clone(),
                BoostSpec::from(&b),
                tolerances,
            )
        })
        .collect::<boostlab_core::Result<Vec<_>>>()?;
    let total_inside_window = total_values
        .iter()
        .all(|&v| v >= windows.total.lower - 1e-9 && v <= windows.total.upper + 1e-9);

    let mut checks = vec![
        fit_check("total_fit", &total, (0.5, 0.25), 1e-3),
        fit_check("spin_unboosted_fit", &spin_unboosted, (2.0, 1.0), 1e-3),
        Check::new(
            "total_inside_window",
            total_inside_window,
            format!("{:?}", windows.total),
        ),
    ];
    let drift = total_by_rapidity
        .iter()
        .map(|(_, f)| {
            (f.intercept - total.intercept)
                .abs()
                .max((f.slope - total.slope).abs())
        })
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "total_fit_boost_invariant",
        drift <= 1e-6,
        format!("max drift {drift:e}"),
    ));
    checks.extend(window_check(
        "spin_unboosted_window",
        &windows.spin_unboosted,
        (2.0 / 3.0, 2.0),
        1e-3,
    ));
    if cfg.is_reference_frame() && (xi - DEFAULT_RAPIDITY).abs() < 1e-12 {
        checks.push(fit_check(
            "spin_boosted_fit",
            &spin_boosted,
            REFERENCE_BOOSTED_FIT,
            2e-3,
        ));
        checks.extend(window_check(
            "spin_boosted_window",
            &windows.spin_boosted,
            REFERENCE_BOOSTED_WINDOW,
            5e-3,
        ));
    }

    let doc = WitnessDocument {
        convention_id: cal.convention_id.clone(),
        calibration: cal,
        energy: cfg.energy,
        boost: BoostSpec::from(&b),
        x_grid: xs,
        fits: Fits {
            total,
            spin_unboosted,
            spin_boosted,
            total_by_rapidity,
        },
        windows,
        reports,
        total_inside_window,
        checks: checks.clone(),
    };
    let artifact = cfg.out.join(FILE);
    write_json(&artifact, &doc)?;
    Ok(Outcome {
        artifact,
        report: doc,
        checks,
    })
}
