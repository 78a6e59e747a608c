//! Entanglement detectors, the MUB witness and separable windows.

pub mod classify;
pub mod criteria;
pub mod seesaw;
pub mod witness;

pub use classify::{
    classify, CertificateRef, ClassificationResult, Classifier, Evidence, Label, RLGMT_TOL,
    WITNESS_MARGIN,
};
pub use criteria::{
    boosted_rho1_spin, ppt_min_eigenvalue, ppt_status, realignment_curve, realignment_sum, rlgmt,
    PptStatus, NPT_TOL, PPT_TOL,
};
pub use seesaw::{restart_rng, seesaw_run, separable_bounds, SeesawOptions, SeparableWindow};
pub use witness::{
    affine_fit, boost_witness, calibrate, mub_witness_spin, mub_witness_spin_by_id, pairing,
    simplex_edge_grid, spin_traced, total_pairing_fit, witness_total, AffineFit, BoostSpec,
    BoundMethod, Calibration, MubConvention, WitnessReport, WitnessTolerances, CALIBRATION_TOL,
};
