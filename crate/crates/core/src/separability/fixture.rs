//! Ensemble files: the bundled published decomposition and solver certificates.

use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::ensemble::{product_defect, SeparableEnsemble, FIXTURE_PRODUCT_DEFECT_TOL};
use super::solver::SolverReport;
use crate::analysis::boosted_rho1_spin;
use crate::error::{Error, Result};
use crate::linalg::{hs_distance, vec_norm, ComplexMatrix, C};
use crate::qudit::QUTRIT;
use crate::relativity::BoostParams;
use crate::scalar::Real;

/// The published ten-term decomposition of `ρ′_spin(1/15)` at `ξ = 4/5`.
pub const BUNDLED_FIXTURE: &str = include_str!("../../fixtures/appendix_a.json");

/// HS gap above which the fixture check fails.
pub const FIXTURE_GAP_TOL: f64 = 1e-5;
pub const FIXTURE_X: f64 = 1.0 / 15.0;
pub const FIXTURE_RAPIDITY: f64 = 0.8;
pub const FIXTURE_ENERGY: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorRecord {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl VectorRecord {
    pub fn from_complex<T: Real>(v: &[C<T>]) -> Self {
        Self {
            re: v.iter().map(|z| z.re.as_f64()).collect(),
            im: v.iter().map(|z| z.im.as_f64()).collect(),
        }
    }

    pub fn to_complex<T: Real>(&self) -> Vec<C<T>> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex::new(T::lit(re), T::lit(im)))
            .collect()
    }
}

/// `{probabilities, vectors: [{re, im}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub probabilities: Vec<f64>,
    pub vectors: Vec<VectorRecord>,
}

impl EnsembleFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: EnsembleFile =
            serde_json::from_str(text).map_err(|e| Error::FixtureCorrupt(e.to_string()))?;
        file.check_shape()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::FixtureCorrupt(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_FIXTURE).expect("bundled fixture is well formed")
    }

    fn check_shape(&self) -> Result<()> {
        if self.probabilities.is_empty() || self.probabilities.len() != self.vectors.len() {
            return Err(Error::FixtureCorrupt(format!(
                "{} probabilities for {} vectors",
                self.probabilities.len(),
                self.vectors.len()
            )));
        }
        let n = QUTRIT * QUTRIT;
        for (i, v) in self.vectors.iter().enumerate() {
            if v.re.len() != n || v.im.len() != n {
                return Err(Error::FixtureCorrupt(format!(
                    "vector {i} has {} real and {} imaginary parts, expected {n}",
                    v.re.len(),
                    v.im.len()
                )));
            }
        }
        let finite = self.probabilities.iter().all(|p| p.is_finite())
            && self
                .vectors
                .iter()
                .all(|v| v.re.iter().chain(&v.im).all(|x| x.is_finite()));
        if !finite {
            return Err(Error::FixtureCorrupt("non-finite entry".into()));
        }
        Ok(())
    }

    /// Ensemble with weights rescaled to sum to one and vectors normalized,
    /// as needed to absorb the rounding of printed digits.
    pub fn to_ensemble<T: Real>(&self) -> Result<SeparableEnsemble<T>> {
        let total: f64 = self.probabilities.iter().sum();
        let weights = self
            .probabilities
            .iter()
            .map(|&p| T::lit(p / total))
            .collect();
        let vectors = self
            .vectors
            .iter()
            .map(|v| crate::linalg::normalized(&v.to_complex::<T>()))
            .collect();
        SeparableEnsemble::with_product_tolerance(weights, vectors, FIXTURE_PRODUCT_DEFECT_TOL)
            .map_err(|e| Error::FixtureCorrupt(e.to_string()))
    }

    /// `Σ p_i |ψ_i⟩⟨ψ_i|` exactly as printed, without renormalization.
    pub fn raw_mixture(&self) -> ComplexMatrix<f64> {
        let n = QUTRIT * QUTRIT;
        let mut m = ComplexMatrix::zeros(n, n);
        for (p, v) in self.probabilities.iter().zip(&self.vectors) {
            m.add_scaled(&ComplexMatrix::projector(&v.to_complex::<f64>()), *p);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub terms: usize,
    pub probability_sum: f64,
    pub norm_deviations: Vec<f64>,
    pub product_defects: Vec<f64>,
    pub max_norm_deviation: f64,
    pub max_product_defect: f64,
    /// HS distance of the normalized ensemble state to the computed marginal.
    pub hs_gap: f64,
    /// HS distance of the mixture as printed.
    pub raw_hs_gap: f64,
    pub x: f64,
    pub rapidity: f64,
    pub energy: f64,
    pub gap_tolerance: f64,
    pub passed: bool,
}

/// Checks an ensemble file against `ρ′_spin(x)` for a ẑ boost of rapidity `xi`.
pub fn verify_fixture(file: &EnsembleFile, x: f64, xi: f64, energy: f64) -> Result<FixtureReport> {
    let target = boosted_rho1_spin(x, &BoostParams::along_z(xi), energy)?;
    let ensemble = file.to_ensemble::<f64>()?;
    let norm_deviations: Vec<f64> = file
        .vectors
        .iter()
        .map(|v| (vec_norm(&v.to_complex::<f64>()) - 1.0).abs())
        .collect();
    let product_defects: Vec<f64> = ensemble
        .vectors()
        .iter()
        .map(|v| product_defect(v))
        .collect();
    let hs_gap = ensemble.gap_to(&target)?;
    let raw_hs_gap = hs_distance(&file.raw_mixture(), target.matrix())?;
    let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    Ok(FixtureReport {
        terms: file.probabilities.len(),
        probability_sum: file.probabilities.iter().sum(),
        max_norm_deviation: max(&norm_deviations),
        max_product_defect: max(&product_defects),
        norm_deviations,
        product_defects,
        hs_gap,
        raw_hs_gap,
        x,
        rapidity: xi,
        energy,
        gap_tolerance: FIXTURE_GAP_TOL,
        passed: hs_gap <= FIXTURE_GAP_TOL,
    })
}

/// Verifies the file at `path`, or the bundled fixture when `None`.
pub fn verify_appendix_fixture(path: Option<&Path>) -> Result<FixtureReport> {
    let file = match path {
        Some(p) => EnsembleFile::load(p)?,
        None => EnsembleFile::bundled(),
    };
    verify_fixture(&file, FIXTURE_X, FIXTURE_RAPIDITY, FIXTURE_ENERGY)
}

/// Solver output in the fixture schema plus the achieved gap and solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub probabilities: Vec<f64>,
    pub vectors: Vec<VectorRecord>,
    pub achieved_gap: f64,
    pub solver: SolverReport,
}

impl Certificate {
    pub fn new<T: Real>(ensemble: &SeparableEnsemble<T>, report: &SolverReport) -> Self {
        Self {
            probabilities: ensemble.weights().iter().map(|w| w.as_f64()).collect(),
            vectors: ensemble
                .vectors()
                .iter()
                .map(|v| VectorRecord::from_complex(v))
                .collect(),
            achieved_gap: ensemble
                .achieved_gap()
                .map_or(report.best_gap, Real::as_f64),
            solver: report.clone(),
        }
    }

    pub fn ensemble_file(&self) -> EnsembleFile {
        EnsembleFile {
            probabilities: self.probabilities.clone(),
            vectors: self.vectors.clone(),
        }
    }
}
