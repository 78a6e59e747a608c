use anyhow::Result;
use boostlab_core::analysis::{boosted_rho1_spin, ppt_min_eigenvalue, BoostSpec, NPT_TOL};
use boostlab_core::relativity::BoostParams;
use boostlab_core::separability::{certify_separable, Certificate, SolverOptions, SolverReport};
use serde::Serialize;

use super::{Check, Outcome};
use crate::config::ScenarioConfig;
use crate::output::write_json;

pub const DEFAULT_X: f64 = 1.0 / 15.0;
pub const DEFAULT_RAPIDITY: f64 = 0.8;
pub const FILE: &str = "certify.json";
/// `(x, ξ)` pairs reported separable in the reference frame.
pub const REFERENCE_SUCCESSES: [(f64, f64); 2] = [(1.0 / 15.0, 0.8), (0.1, 0.8)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyEntry {
    pub x: f64,
    pub boost: BoostSpec,
    pub min_pt_eig: f64,
    pub certified: bool,
    pub best_gap: f64,
    /// Present on success.
    pub certificate: Option<Certificate>,
    /// Present on failure.
    pub failure: Option<SolverReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyReport {
    pub energy: f64,
    pub solver: SolverOptions,
    pub entries: Vec<CertifyEntry>,
    pub checks: Vec<Check>,
}

pub fn solver_options(cfg: &ScenarioConfig) -> SolverOptions {
    SolverOptions {
        k: cfg.k_terms,
        restarts: cfg.restarts,
        tol: cfg.tol,
        seed: cfg.seed,
        ..SolverOptions::default()
    }
}

/// Separability search on the boosted spin marginal of `ρ₁(x)`, for every
/// grid `x` and rapidity.
pub fn certify(cfg: &ScenarioConfig) -> Result<Outcome<CertifyReport>> {
    let opts = solver_options(cfg);
    let mut entries = Vec::new();
    let mut checks = Vec::new();
    for xi in cfg.rapidities_or(&[DEFAULT_RAPIDITY]) {
        let b = BoostParams::new(cfg.unit_direction(), xi)?;
        for x in cfg.x_grid_or(&[DEFAULT_X]) {
            let rho = boosted_rho1_spin(x, &b, cfg.energy)?;
            let min = ppt_min_eigenvalue(&rho)?;
            let out = certify_separable(&rho, &opts)?;
            let certified = out.is_certified();
            let entry = CertifyEntry {
                x,
                boost: BoostSpec::from(&b),
                min_pt_eig: min,
                certified,
                best_gap: out.best_gap(),
                certificate: if certified {
                    out.ensemble().map(|e| Certificate::new(e, out.report()))
                } else {
                    None
                },
                failure: (!certified).then(|| out.report().clone()),
            };
            if min < -NPT_TOL {
                checks.push(Check::new(
                    format!("npt_not_certified_x_{x}_xi_{xi}"),
                    !certified,
                    format!("min PT eigenvalue {min}, gap {}", entry.best_gap),
                ));
            }
            let expected = REFERENCE_SUCCESSES
                .iter()
                .any(|&(rx, rxi)| (rx - x).abs() < 1e-12 && (rxi - xi).abs() < 1e-12);
            if expected && cfg.is_reference_frame() {
                checks.push(Check::new(
                    format!("certified_x_{x}_xi_{xi}"),
                    certified,
                    format!("gap {} (tol {})", entry.best_gap, cfg.tol),
                ));
            }
            entries.push(entry);
        }
    }
    let report = CertifyReport {
        energy: cfg.energy,
        solver: opts,
        entries,
        checks: checks.clone(),
    };
    let artifact = cfg.out.join(FILE);
    write_json(&artifact, &report)?;
    Ok(Outcome {
        artifact,
        report,
        checks,
    })
}
