//! Named scenarios. Each writes one artifact under the output directory and
//! returns its report together with reference checks.

pub mod activate;
pub mod appendix;
pub mod certify;
pub mod curve;
pub mod scan;
pub mod witness;

use std::path::PathBuf;

use serde::Serialize;

pub use activate::{activate, ActivationReport};
pub use appendix::verify_appendix;
pub use certify::{certify, CertifyEntry, CertifyReport};
pub use curve::{realignment_curve, CurveRow};
pub use scan::{simplex_scan, ScanRow, SCAN_HEADER};
pub use witness::{witness_report, WitnessDocument};

/// Comparison of a computed value with a reference expectation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// `|value − expected| ≤ tol`.
    pub fn close(name: impl Into<String>, value: f64, expected: f64, tol: f64) -> Self {
        Self::new(
            name,
            (value - expected).abs() <= tol,
            format!("{value} vs {expected} ± {tol}"),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Outcome<R> {
    pub artifact: PathBuf,
    pub report: R,
    pub checks: Vec<Check>,
}

impl<R> Outcome<R> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}
