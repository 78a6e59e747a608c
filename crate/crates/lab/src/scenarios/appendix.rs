use std::path::Path;

use anyhow::Result;
use boostlab_core::separability::{
    verify_appendix_fixture, FixtureReport, FIXTURE_PRODUCT_DEFECT_TOL,
};
use serde::Serialize;

use super::{Check, Outcome};
use crate::config::ScenarioConfig;
use crate::output::write_json;

pub const FILE: &str = "appendix_report.json";
/// Sum of the published probabilities, as printed.
pub const PRINTED_PROBABILITY_SUM: f64 = 0.9999998;

#[derive(Debug, Clone, PartialEq, Serialize)]
struct Document<'a> {
    #[serde(flatten)]
    report: &'a FixtureReport,
    checks: &'a [Check],
}

/// Checks a decomposition file (the bundled one by default) against the
/// freshly computed boosted marginal.
pub fn verify_appendix(
    cfg: &ScenarioConfig,
    fixture: Option<&Path>,
) -> Result<Outcome<FixtureReport>> {
    let report = verify_appendix_fixture(fixture)?;
    let checks = vec![
        Check::new(
            "hs_gap",
            report.passed,
            format!("{} (tolerance {})", report.hs_gap, report.gap_tolerance),
        ),
        Check::close(
            "probability_sum",
            report.probability_sum,
            PRINTED_PROBABILITY_SUM,
            1e-7,
        ),
        Check::new(
            "product_defects",
            report.max_product_defect <= FIXTURE_PRODUCT_DEFECT_TOL,
            format!("max second singular value {}", report.max_product_defect),
        ),
    ];
    let artifact = cfg.out.join(FILE);
    write_json(
        &artifact,
        &Document {
            report: &report,
            checks: &checks,
        },
    )?;
    Ok(Outcome {
        artifact,
        report,
        checks,
    })
}
