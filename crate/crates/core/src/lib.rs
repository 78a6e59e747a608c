//! Numerical laboratory for spin entanglement of two massive spin-1
//! particles under Lorentz boosts.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

// `!(a > b)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod linalg;
pub mod qudit;
pub mod relativity;
pub mod scalar;
pub mod separability;

pub use error::{Error, Result};
pub use scalar::Real;

pub type CMatrix64 = linalg::ComplexMatrix<f64>;
pub type CMatrix32 = linalg::ComplexMatrix<f32>;
pub type Density64 = linalg::DensityMatrix<f64>;
pub type Density32 = linalg::DensityMatrix<f32>;
pub type FourVector64 = relativity::FourVector<f64>;
pub type FourVector32 = relativity::FourVector<f32>;
pub type Boost64 = relativity::BoostParams<f64>;
pub type Boost32 = relativity::BoostParams<f32>;
pub type TwoParticle64 = relativity::TwoParticleState<f64>;
pub type TwoParticle32 = relativity::TwoParticleState<f32>;
pub type Ensemble64 = separability::SeparableEnsemble<f64>;
pub type Ensemble32 = separability::SeparableEnsemble<f32>;
