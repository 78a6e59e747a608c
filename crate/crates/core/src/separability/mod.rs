//! Separability certificates for 3⊗3 states.

pub mod ensemble;
pub mod fixture;
pub mod solver;

pub use ensemble::{
    ensemble_state, product_defect, Factor, SeparableEnsemble, FIXTURE_PRODUCT_DEFECT_TOL,
    PRODUCT_DEFECT_TOL,
};
pub use fixture::{
    verify_appendix_fixture, verify_fixture, Certificate, EnsembleFile, FixtureReport,
    VectorRecord, BUNDLED_FIXTURE, FIXTURE_ENERGY, FIXTURE_GAP_TOL, FIXTURE_RAPIDITY, FIXTURE_X,
};
pub use solver::{certify_separable, Certification, SolverOptions, SolverReport};
