use anyhow::Result;
use boostlab_core::analysis::{ppt_min_eigenvalue, rlgmt, BoostSpec, PptStatus};
use boostlab_core::linalg::DensityMatrix;
use boostlab_core::qudit::PhiInterpretation;
use boostlab_core::relativity::{build_rho0, BoostParams};
use serde::Serialize;

use super::{Check, Outcome};
use crate::config::ScenarioConfig;
use crate::output::write_json;

pub const DEFAULT_X: f64 = 7.0 / 60.0;
pub const DEFAULT_RAPIDITY: f64 = 0.95;
pub const REFERENCE_P: f64 = 0.04;
pub const REFERENCE_RLGMT: f64 = 0.183;
pub const FILE: &str = "activate.json";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinSummary {
    pub min_pt_eig: f64,
    pub rlgmt: f64,
    pub ppt_status: PptStatus,
}

impl SpinSummary {
    fn of(rho: &DensityMatrix<f64>) -> Result<Self> {
        let min = ppt_min_eigenvalue(rho)?;
        Ok(Self {
            min_pt_eig: min,
            rlgmt: rlgmt(rho)?,
            ppt_status: PptStatus::from_min_eigenvalue(min),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpretationSummary {
    pub interpretation: PhiInterpretation,
    pub unboosted: SpinSummary,
    pub boosted: SpinSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActivationReport {
    pub p: f64,
    pub x: f64,
    pub energy: f64,
    pub boost: BoostSpec,
    pub interpretation: PhiInterpretation,
    pub unboosted: SpinSummary,
    pub boosted: SpinSummary,
    /// The same numbers for every available interpretation.
    pub comparison: Vec<InterpretationSummary>,
    pub checks: Vec<Check>,
}

fn summarize(
    cfg: &ScenarioConfig,
    x: f64,
    b: &BoostParams<f64>,
    i: PhiInterpretation,
) -> Result<InterpretationSummary> {
    let rho0 = build_rho0(cfg.p, x, cfg.energy, i)?;
    Ok(InterpretationSummary {
        interpretation: i,
        unboosted: SpinSummary::of(&rho0.spin_marginal())?,
        boosted: SpinSummary::of(&rho0.boosted(b)?.spin_marginal())?,
    })
}

/// Spin marginal of `ρ₀(p, x)` before and after the boost.
pub fn activate(cfg: &ScenarioConfig) -> Result<Outcome<ActivationReport>> {
    let x = cfg.x_grid_or(&[DEFAULT_X])[0];
    let xi = cfg.rapidities_or(&[DEFAULT_RAPIDITY])[0];
    let b = BoostParams::new(cfg.unit_direction(), xi)?;
    let comparison = PhiInterpretation::ALL
        .iter()
        .map(|&i| summarize(cfg, x, &b, i))
        .collect::<Result<Vec<_>>>()?;
    let chosen = comparison
        .iter()
        .find(|s| s.interpretation == cfg.interpretation)
        .expect("every interpretation is summarized")
        .clone();
    let reference = cfg.is_reference_frame()
        && (cfg.p - REFERENCE_P).abs() < 1e-12
        && (x - DEFAULT_X).abs() < 1e-12
        && (xi - DEFAULT_RAPIDITY).abs() < 1e-12;
    let mut checks = Vec::new();
    if reference {
        checks.push(Check::new(
            "unboosted_ppt",
            chosen.unboosted.min_pt_eig >= -1e-10,
            format!("min PT eigenvalue {}", chosen.unboosted.min_pt_eig),
        ));
        checks.push(Check::close(
            "unboosted_rlgmt",
            chosen.unboosted.rlgmt,
            REFERENCE_RLGMT,
            0.01,
        ));
        checks.push(Check::new(
            "boosted_npt",
            chosen.boosted.min_pt_eig < -1e-4,
            format!("min PT eigenvalue {}", chosen.boosted.min_pt_eig),
        ));
    }
    let report = ActivationReport {
        p: cfg.p,
        x,
        energy: cfg.energy,
        boost: BoostSpec::from(&b),
        interpretation: cfg.interpretation,
        unboosted: chosen.unboosted,
        boosted: chosen.boosted,
        comparison,
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
