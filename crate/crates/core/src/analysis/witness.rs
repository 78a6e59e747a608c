//! MUB witness for two qutrits, its embedding in the momentum-spin space,
//! boosted versions and affine fits of witness pairings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron_vec, partial_trace_operator, ComplexMatrix, DensityMatrix, C};
use crate::qudit::{mub_bases, QUTRIT};
use crate::relativity::{
    build_rho1, two_particle_unitary, BoostParams, FourVector, MOMENTA, SPIN_SUBSYSTEMS,
    TWO_PARTICLE_DIMS,
};
use crate::scalar::Real;

/// Tolerance on intercept and slope when matching the reference pairing.
pub const CALIBRATION_TOL: f64 = 1e-3;
/// Reference total-space pairing `tr(W_total ρ₁(x)) = 1/2 + x/4`.
pub const REFERENCE_INTERCEPT: f64 = 0.5;
pub const REFERENCE_SLOPE: f64 = 0.25;

/// Convention for building the witness from the four qutrit MUBs.
///
/// The first basis contributes `|i⟩ ⊗ |(i+shift)*⟩`, the others `|i⟩ ⊗ |i*⟩`;
/// `conjugate_second = false` moves the conjugation to the first factor.
/// Identifier: `wf-b{first}-s{shift}-c{1|2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MubConvention {
    pub first_basis: usize,
    pub shift: usize,
    pub conjugate_second: bool,
}

impl MubConvention {
    /// Every convention the calibration considers, in search order.
    pub fn all() -> Vec<MubConvention> {
        let mut out = Vec::new();
        for first_basis in 0..4 {
            for shift in [1, 2] {
                for conjugate_second in [true, false] {
                    out.push(MubConvention {
                        first_basis,
                        shift,
                        conjugate_second,
                    });
                }
            }
        }
        out
    }

    pub fn id(&self) -> String {
        format!(
            "wf-b{}-s{}-c{}",
            self.first_basis,
            self.shift,
            if self.conjugate_second { 2 } else { 1 }
        )
    }
}

impl fmt::Display for MubConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for MubConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MubConvention::all()
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::UnknownConvention(s.to_string()))
    }
}

/// Sum of the twelve product projectors of the spin witness.
pub fn mub_witness_spin<T: Real>(conv: &MubConvention) -> Result<ComplexMatrix<T>> {
    if conv.first_basis >= 4 || !(1..QUTRIT).contains(&conv.shift) {
        return Err(Error::UnknownConvention(conv.id()));
    }
    let mubs = mub_bases::<T>();
    let order = std::iter::once(conv.first_basis).chain((0..4).filter(|&b| b != conv.first_basis));
    let mut w = ComplexMatrix::zeros(QUTRIT * QUTRIT, QUTRIT * QUTRIT);
    for (pos, basis) in order.enumerate() {
        let shift = if pos == 0 { conv.shift } else { 0 };
        for i in 0..QUTRIT {
            let u = mubs.vector(basis, i);
            let v = mubs.vector(basis, (i + shift) % QUTRIT);
            let conj = |x: Vec<C<T>>| x.into_iter().map(|z| z.conj()).collect::<Vec<_>>();
            let prod = if conv.conjugate_second {
                kron_vec(&u, &conj(v))
            } else {
                kron_vec(&conj(u), &v)
            };
            w.add_scaled(&ComplexMatrix::projector(&prod), T::one());
        }
    }
    Ok(w)
}

/// Looks up a convention by identifier and builds its witness.
pub fn mub_witness_spin_by_id<T: Real>(id: &str) -> Result<ComplexMatrix<T>> {
    mub_witness_spin(&id.parse::<MubConvention>()?)
}

/// `(1/4) 1_mom ⊗ W_spin` on the (mom₁, mom₂, spin₁, spin₂) ordering, so that
/// the momentum trace returns `W_spin`.
pub fn witness_total<T: Real>(w_spin: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let n = QUTRIT * QUTRIT;
    if w_spin.rows() != n || w_spin.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "spin witness must be {n}x{n}, got {}x{}",
            w_spin.rows(),
            w_spin.cols()
        )));
    }
    let m = MOMENTA * MOMENTA;
    Ok(ComplexMatrix::identity(m)
        .scale(T::one() / T::lit(m as f64))
        .kron(w_spin))
}

/// `U W U†` with `U` the two-particle boost representation for `momenta`.
pub fn boost_witness<T: Real>(
    w_total: &ComplexMatrix<T>,
    momenta: &[FourVector<T>; 2],
    b: &BoostParams<T>,
) -> Result<ComplexMatrix<T>> {
    let (u, _) = two_particle_unitary(momenta, b)?;
    w_total.conjugate_by(&u)
}

/// Momentum trace of a total-space operator (not renormalized).
pub fn spin_traced<T: Real>(w_total: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    partial_trace_operator(w_total, &TWO_PARTICLE_DIMS, &SPIN_SUBSYSTEMS)
}

/// Least-squares line through `(x, y)` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineFit {
    pub intercept: f64,
    pub slope: f64,
    pub max_residual: f64,
}

impl AffineFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    pub fn matches(&self, intercept: f64, slope: f64, tol: f64) -> bool {
        (self.intercept - intercept).abs() <= tol && (self.slope - slope).abs() <= tol
    }
}

pub fn affine_fit(points: &[(f64, f64)]) -> Result<AffineFit> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return Err(Error::OutOfRange(
            "affine fit needs at least two points".into(),
        ));
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::OutOfRange(
            "affine fit needs distinct abscissae".into(),
        ));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).abs())
        .fold(0.0, f64::max);
    Ok(AffineFit {
        intercept,
        slope,
        max_residual,
    })
}

/// `n` evenly spaced points covering `[0, 1/3]`.
pub fn simplex_edge_grid(n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| i as f64 / (3.0 * (n - 1) as f64)).collect()
}

/// Fit of `tr(W_total ρ₁(x))` for a spin witness, unboosted.
pub fn total_pairing_fit<T: Real>(
    w_spin: &ComplexMatrix<T>,
    xs: &[f64],
    kinetic_energy: T,
) -> Result<AffineFit> {
    let wt = witness_total(w_spin)?;
    let pts = xs
        .iter()
        .map(|&x| {
            let rho = build_rho1(T::lit(x), kinetic_energy)?;
            Ok((x, rho.density().expectation(&wt)?.as_f64()))
        })
        .collect::<Result<Vec<_>>>()?;
    affine_fit(&pts)
}

/// Result of the convention search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub convention: MubConvention,
    pub convention_id: String,
    pub fit: AffineFit,
    pub candidates_checked: usize,
}

/// First convention, in [`MubConvention::all`] order, whose total-space
/// pairing reproduces `1/2 + x/4` within [`CALIBRATION_TOL`].
pub fn calibrate<T: Real>(kinetic_energy: T) -> Result<Calibration> {
    let xs = simplex_edge_grid(11);
    for (i, conv) in MubConvention::all().into_iter().enumerate() {
        let fit = total_pairing_fit(&mub_witness_spin::<T>(&conv)?, &xs, kinetic_energy)?;
        if fit.matches(REFERENCE_INTERCEPT, REFERENCE_SLOPE, CALIBRATION_TOL) {
            return Ok(Calibration {
                convention: conv,
                convention_id: conv.id(),
                fit,
                candidates_checked: i + 1,
            });
        }
    }
    Err(Error::UnknownConvention(
        "no MUB convention reproduces the reference pairing".into(),
    ))
}

/// Spin-space pairing `tr(W ρ)`.
pub fn pairing<T: Real>(w: &ComplexMatrix<T>, rho: &DensityMatrix<T>) -> Result<T> {
    rho.expectation(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Analytic,
    Seesaw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostSpec {
    pub direction: [f64; 3],
    pub rapidity: f64,
}

impl<T: Real> From<&BoostParams<T>> for BoostSpec {
    fn from(b: &BoostParams<T>) -> Self {
        BoostSpec {
            direction: b.direction().map(Real::as_f64),
            rapidity: b.rapidity().as_f64(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessTolerances {
    pub seesaw_convergence: f64,
    pub seesaw_restarts: usize,
    pub calibration: f64,
}

/// Witness value with its separability window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub bound_method: BoundMethod,
    pub convention_id: String,
    pub boost: BoostSpec,
    pub tolerances: WitnessTolerances,
}

impl WitnessReport {
    pub fn new(
        value: f64,
        (lower, upper): (f64, f64),
        bound_method: BoundMethod,
        convention_id: String,
        boost: BoostSpec,
        tolerances: WitnessTolerances,
    ) -> Result<Self> {
        if !(lower <= upper) {
            return Err(Error::OutOfRange(format!(
                "window [{lower}, {upper}] is empty"
            )));
        }
        Ok(Self {
            value,
            lower,
            upper,
            bound_method,
            convention_id,
            boost,
            tolerances,
        })
    }

    /// Value outside the window certifies entanglement.
    pub fn violated(&self) -> bool {
        let margin = 1e-9;
        self.value > self.upper + margin || self.value < self.lower - margin
    }
}
