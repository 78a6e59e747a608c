//! Entanglement classification of two-qutrit states.

use serde::{Deserialize, Serialize};

use super::criteria::{ppt_min_eigenvalue, rlgmt, PptStatus};
use super::seesaw::{separable_bounds, SeesawOptions, SeparableWindow};
use super::witness::{calibrate, mub_witness_spin};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::qudit::QUTRIT;
use crate::scalar::Real;
use crate::separability::{certify_separable, Certification, SolverOptions};

/// RLGMT above this counts as a realignment violation.
pub const RLGMT_TOL: f64 = 1e-10;
/// Margin by which a witness value must leave its window.
pub const WITNESS_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    NptFree,
    PptEntangled,
    Separable,
    PptUndecided,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::NptFree => "NPT_FREE",
            Label::PptEntangled => "PPT_ENTANGLED",
            Label::Separable => "SEPARABLE",
            Label::PptUndecided => "PPT_UNDECIDED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateRef {
    pub gap: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub min_pt_eigenvalue: f64,
    pub rlgmt: f64,
    pub witness_value: Option<f64>,
    pub witness_window: Option<(f64, f64)>,
    pub certificate: Option<CertificateRef>,
    /// Best solver gap when a search ran without success.
    pub solver_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub label: Label,
    pub ppt_status: PptStatus,
    /// The minimum PT eigenvalue sits between the PPT and NPT thresholds.
    pub borderline: bool,
    pub evidence: Evidence,
}

/// Holds the calibrated spin witness and its separable window.
#[derive(Debug, Clone)]
pub struct Classifier<T> {
    witness: ComplexMatrix<T>,
    window: SeparableWindow,
    convention_id: String,
}

impl<T: Real> Classifier<T> {
    pub fn new(seesaw: &SeesawOptions) -> Result<Self> {
        let cal = calibrate::<T>(T::one())?;
        let witness = mub_witness_spin::<T>(&cal.convention)?;
        let window = separable_bounds(&witness, [QUTRIT, QUTRIT], seesaw)?;
        Ok(Self {
            witness,
            window,
            convention_id: cal.convention_id,
        })
    }

    pub fn window(&self) -> SeparableWindow {
        self.window
    }

    pub fn convention_id(&self) -> &str {
        &self.convention_id
    }

    /// Classification without separability search; `SEPARABLE` is never returned.
    pub fn detect(&self, rho: &DensityMatrix<T>) -> Result<ClassificationResult> {
        if rho.dims() != [QUTRIT, QUTRIT] {
            return Err(Error::BadSubsystem(format!(
                "classifier handles 3x3 states, got dims {:?}",
                rho.dims()
            )));
        }
        let min = ppt_min_eigenvalue(rho)?.as_f64();
        let ppt_status = PptStatus::from_min_eigenvalue(min);
        let mut evidence = Evidence {
            min_pt_eigenvalue: min,
            rlgmt: rlgmt(rho)?.as_f64(),
            witness_value: None,
            witness_window: None,
            certificate: None,
            solver_gap: None,
        };
        let result = |label, evidence| ClassificationResult {
            label,
            ppt_status,
            borderline: ppt_status == PptStatus::Borderline,
            evidence,
        };
        if ppt_status == PptStatus::Npt {
            return Ok(result(Label::NptFree, evidence));
        }
        let value = rho.expectation(&self.witness)?.as_f64();
        evidence.witness_value = Some(value);
        evidence.witness_window = Some((self.window.lower, self.window.upper));
        let witnessed = value > self.window.upper + WITNESS_MARGIN
            || value < self.window.lower - WITNESS_MARGIN;
        if evidence.rlgmt > RLGMT_TOL || witnessed {
            return Ok(result(Label::PptEntangled, evidence));
        }
        Ok(result(Label::PptUndecided, evidence))
    }

    /// Full classification: detectors first, then a separability search.
    pub fn classify(
        &self,
        rho: &DensityMatrix<T>,
        budget: &SolverOptions,
    ) -> Result<ClassificationResult> {
        let mut out = self.detect(rho)?;
        if out.label != Label::PptUndecided {
            return Ok(out);
        }
        match certify_separable(rho, budget)? {
            Certification::Certified { ensemble, report } => {
                out.label = Label::Separable;
                out.evidence.certificate = Some(CertificateRef {
                    gap: report.best_gap,
                    terms: ensemble.len(),
                });
            }
            Certification::NoCertificate { report, .. } => {
                out.evidence.solver_gap = Some(report.best_gap);
            }
        }
        Ok(out)
    }
}

/// One-shot classification with the default witness window.
pub fn classify<T: Real>(
    rho: &DensityMatrix<T>,
    budget: &SolverOptions,
) -> Result<ClassificationResult> {
    Classifier::new(&SeesawOptions::default())?.classify(rho, budget)
}
