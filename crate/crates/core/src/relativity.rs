//! Four-vector kinematics, Lorentz boosts, Wigner rotations and the boost
//! action on two spin-1 particles restricted to a two-momentum lattice.
//!
//! Units: `m = c = ħ = 1`, metric `η = diag(1, −1, −1, −1)`.
//!
//! Two-particle states live on `C² ⊗ C² ⊗ C³ ⊗ C³` ordered as
//! (momentum₁, momentum₂, spin₁, spin₂). Momentum slots are labels carried
//! alongside the matrix; a boost relabels slot `i` from `k_i` to `Λk_i`
//! without reordering. The discrete momentum basis is stored orthonormal, so
//! the covariant `2k⁰` weights never appear: every marginal is renormalized.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, C};
use crate::qudit::{activation_spin_state, rho_b, PhiInterpretation, QUTRIT};
use crate::scalar::Real;

pub const MOMENTA: usize = 2;
/// Subsystem dimensions of a two-particle state.
pub const TWO_PARTICLE_DIMS: [usize; 4] = [MOMENTA, MOMENTA, QUTRIT, QUTRIT];
pub const SPIN_SUBSYSTEMS: [usize; 2] = [2, 3];
pub const MOMENTUM_SUBSYSTEMS: [usize; 2] = [0, 1];

const ON_SHELL_TOL: f64 = 1e-10;
const ROTATION_TOL: f64 = 1e-8;
const TIME_BLOCK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector<T> {
    pub t: T,
    pub space: [T; 3],
}

impl<T: Real> FourVector<T> {
    pub fn new(t: T, x: T, y: T, z: T) -> Self {
        Self {
            t,
            space: [x, y, z],
        }
    }

    /// `k̃ = (1, 0, 0, 0)`.
    pub fn at_rest() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn components(&self) -> [T; 4] {
        [self.t, self.space[0], self.space[1], self.space[2]]
    }

    pub fn from_components(c: [T; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn dot(&self, other: &Self) -> T {
        self.t * other.t - (0..3).map(|i| self.space[i] * other.space[i]).sum::<T>()
    }

    pub fn mass_squared(&self) -> T {
        self.dot(self)
    }

    pub fn spatial_norm(&self) -> T {
        self.space.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// `k·k = 1` (relative to `k⁰²`) and `k⁰ > 0`.
    pub fn is_on_shell(&self) -> bool {
        let scale = T::one().max(self.t * self.t);
        self.t > T::zero() && (self.mass_squared() - T::one()).abs() <= T::tol(ON_SHELL_TOL) * scale
    }

    fn require_on_shell(&self) -> Result<()> {
        if self.is_on_shell() {
            Ok(())
        } else {
            Err(Error::OffShell {
                mass_squared: self.mass_squared().as_f64(),
            })
        }
    }
}

/// Side of the x axis on which a lattice momentum points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisSign {
    Plus,
    Minus,
}

/// `(1 + E, ±√(E(2+E)), 0, 0)` for kinetic energy `E`.
pub fn four_momentum<T: Real>(kinetic_energy: T, sign: AxisSign) -> Result<FourVector<T>> {
    if !(kinetic_energy > T::zero()) || !kinetic_energy.is_finite() {
        return Err(Error::NonPositiveEnergy(kinetic_energy.as_f64()));
    }
    let p = (kinetic_energy * (T::lit(2.0) + kinetic_energy)).sqrt();
    let p = match sign {
        AxisSign::Plus => p,
        AxisSign::Minus => -p,
    };
    Ok(FourVector::new(
        T::one() + kinetic_energy,
        p,
        T::zero(),
        T::zero(),
    ))
}

/// The lattice `{k₁, k₂}` for kinetic energy `E`.
pub fn momentum_pair<T: Real>(kinetic_energy: T) -> Result<[FourVector<T>; 2]> {
    Ok([
        four_momentum(kinetic_energy, AxisSign::Plus)?,
        four_momentum(kinetic_energy, AxisSign::Minus)?,
    ])
}

/// Boost direction (unit 3-vector) and rapidity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostParams<T> {
    direction: [T; 3],
    rapidity: T,
}

impl<T: Real> BoostParams<T> {
    /// Normalizes `direction`; rejects zero or non-finite directions.
    pub fn new(direction: [T; 3], rapidity: T) -> Result<Self> {
        let n = direction.iter().map(|&x| x * x).sum::<T>().sqrt();
        if !(n > T::zero()) || !n.is_finite() || !rapidity.is_finite() {
            return Err(Error::BadDirection);
        }
        Ok(Self {
            direction: direction.map(|x| x / n),
            rapidity,
        })
    }

    pub fn along_z(rapidity: T) -> Self {
        Self {
            direction: [T::zero(), T::zero(), T::one()],
            rapidity,
        }
    }

    pub fn direction(&self) -> [T; 3] {
        self.direction
    }

    pub fn rapidity(&self) -> T {
        self.rapidity
    }
}

/// Real 4×4 matrix acting on `(t, x, y, z)` column vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentz<T>(pub [[T; 4]; 4]);

impl<T: Real> Lorentz<T> {
    pub fn identity() -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = T::one();
        }
        Self(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Self(m)
    }

    pub fn apply(&self, k: &FourVector<T>) -> FourVector<T> {
        let c = k.components();
        FourVector::from_components(std::array::from_fn(|i| {
            (0..4).map(|j| self.0[i][j] * c[j]).sum()
        }))
    }

    /// `Λ⁻¹ = η Λᵀ η`, exact for Lorentz transformations.
    pub fn lorentz_inverse(&self) -> Self {
        let eta = |i: usize| if i == 0 { T::one() } else { -T::one() };
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| eta(i) * self.0[j][i] * eta(j))
        }))
    }

    /// `max |ΛᵀηΛ − η|`.
    pub fn metric_defect(&self) -> T {
        let eta = |i: usize| if i == 0 { T::one() } else { -T::one() };
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                let v: T = (0..4).map(|k| self.0[k][i] * eta(k) * self.0[k][j]).sum();
                let target = if i == j { eta(i) } else { T::zero() };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

/// Real 3×3 matrix, expected to be a proper rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation<T>(pub [[T; 3]; 3]);

impl<T: Real> Rotation<T> {
    pub fn identity() -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })
        }))
    }

    /// Rodrigues rotation by `angle` about a unit `axis`.
    pub fn about_axis(axis: [T; 3], angle: T) -> Self {
        let n = axis.iter().map(|&x| x * x).sum::<T>().sqrt();
        let [x, y, z] = axis.map(|a| a / n);
        let (s, c) = angle.sin_cos();
        let t = T::one() - c;
        Self([
            [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
            [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
            [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
        ])
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum())
        }))
    }

    pub fn transpose(&self) -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i])
        }))
    }

    pub fn determinant(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// `max(|RᵀR − I|, |det R − 1|)`.
    pub fn rotation_defect(&self) -> T {
        let rtr = self.transpose().mul(self);
        let mut worst = (self.determinant() - T::one()).abs();
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((rtr.0[i][j] - target).abs());
            }
        }
        worst
    }

    /// Rotation angle in `[0, π]`.
    pub fn angle(&self) -> T {
        let tr = self.0[0][0] + self.0[1][1] + self.0[2][2];
        ((tr - T::one()) / T::lit(2.0))
            .max(-T::one())
            .min(T::one())
            .acos()
    }
}

/// `Λ(e, ξ)`: time row `(cosh ξ, e sinh ξ)`, spatial block `I + (cosh ξ − 1) e eᵀ`.
pub fn boost_matrix<T: Real>(b: &BoostParams<T>) -> Lorentz<T> {
    let e = b.direction;
    let (ch, sh) = (b.rapidity.cosh(), b.rapidity.sinh());
    let mut m = [[T::zero(); 4]; 4];
    m[0][0] = ch;
    for i in 0..3 {
        m[0][i + 1] = e[i] * sh;
        m[i + 1][0] = e[i] * sh;
        for j in 0..3 {
            let delta = if i == j { T::one() } else { T::zero() };
            m[i + 1][j + 1] = delta + (ch - T::one()) * e[i] * e[j];
        }
    }
    Lorentz(m)
}

/// Standard boost `L_k` with `L_k k̃ = k` (mass one).
pub fn standard_boost<T: Real>(k: &FourVector<T>) -> Result<Lorentz<T>> {
    k.require_on_shell()?;
    let mut m = [[T::zero(); 4]; 4];
    m[0][0] = k.t;
    let denom = T::one() + k.t;
    for i in 0..3 {
        m[0][i + 1] = k.space[i];
        m[i + 1][0] = k.space[i];
        for j in 0..3 {
            let delta = if i == j { T::one() } else { T::zero() };
            m[i + 1][j + 1] = delta + k.space[i] * k.space[j] / denom;
        }
    }
    Ok(Lorentz(m))
}

/// Wigner rotation `R(Λ, k) = L_{Λk}⁻¹ Λ L_k`, returned as its spatial block.
pub fn wigner_rotation<T: Real>(b: &BoostParams<T>, k: &FourVector<T>) -> Result<Rotation<T>> {
    let lambda = boost_matrix(b);
    let lk = standard_boost(k)?;
    let lk_boosted = standard_boost(&lambda.apply(k))?;
    let w = lk_boosted.lorentz_inverse().mul(&lambda).mul(&lk);

    let mut time_defect = (w.0[0][0] - T::one()).abs();
    for i in 1..4 {
        time_defect = time_defect.max(w.0[0][i].abs()).max(w.0[i][0].abs());
    }
    if time_defect > T::tol(TIME_BLOCK_TOL) * T::one().max(k.t * lambda.0[0][0]) {
        return Err(Error::NotRotation {
            defect: time_defect.as_f64(),
        });
    }
    let r = Rotation(std::array::from_fn(|i| {
        std::array::from_fn(|j| w.0[i + 1][j + 1])
    }));
    let defect = r.rotation_defect();
    if defect > T::tol(ROTATION_TOL) {
        return Err(Error::NotRotation {
            defect: defect.as_f64(),
        });
    }
    Ok(r)
}

/// The intertwiner `V` with rows `(−1, i, 0)/√2`, `(0, 0, 1)`, `(1, i, 0)/√2`.
pub fn spin1_intertwiner<T: Real>() -> ComplexMatrix<T> {
    let s = T::one() / T::lit(2.0).sqrt();
    let z = T::zero();
    let c = |re: T, im: T| Complex::new(re, im);
    ComplexMatrix::from_rows(&[
        vec![c(-s, z), c(z, s), c(z, z)],
        vec![c(z, z), c(z, z), c(T::one(), z)],
        vec![c(s, z), c(z, s), c(z, z)],
    ])
    .expect("3x3 literal")
}

/// Spin-1 representation `D(R) = V R V†`.
pub fn spin1_rep<T: Real>(r: &Rotation<T>) -> Result<ComplexMatrix<T>> {
    let defect = r.rotation_defect();
    if !(defect <= T::tol(ROTATION_TOL)) {
        return Err(Error::NotRotation {
            defect: defect.as_f64(),
        });
    }
    let rc = ComplexMatrix::from_fn(3, 3, |i, j| Complex::new(r.0[i][j], T::zero()));
    let v = spin1_intertwiner::<T>();
    rc.conjugate_by(&v)
}

/// State of two particles on the two-momentum lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleState<T> {
    momenta: [FourVector<T>; 2],
    state: DensityMatrix<T>,
}

impl<T: Real> TwoParticleState<T> {
    pub fn new(momenta: [FourVector<T>; 2], state: DensityMatrix<T>) -> Result<Self> {
        if state.dims() != TWO_PARTICLE_DIMS {
            return Err(Error::BadSubsystem(format!(
                "two-particle state needs dims {TWO_PARTICLE_DIMS:?}, got {:?}",
                state.dims()
            )));
        }
        for k in &momenta {
            k.require_on_shell()?;
        }
        Ok(Self { momenta, state })
    }

    /// `ρ_mom ⊗ ρ_spin` with `ρ_mom` on `C²⊗C²` and `ρ_spin` on `C³⊗C³`.
    pub fn product(
        momenta: [FourVector<T>; 2],
        momentum: &DensityMatrix<T>,
        spin: &DensityMatrix<T>,
    ) -> Result<Self> {
        Self::new(momenta, momentum.tensor(spin))
    }

    pub fn momenta(&self) -> &[FourVector<T>; 2] {
        &self.momenta
    }

    pub fn density(&self) -> &DensityMatrix<T> {
        &self.state
    }

    pub fn spin_marginal(&self) -> DensityMatrix<T> {
        self.state
            .partial_trace(&SPIN_SUBSYSTEMS)
            .expect("fixed subsystem layout")
    }

    pub fn momentum_marginal(&self) -> DensityMatrix<T> {
        self.state
            .partial_trace(&MOMENTUM_SUBSYSTEMS)
            .expect("fixed subsystem layout")
    }

    /// `ρ′ = [U(Λ)⊗U(Λ)] ρ [U(Λ)⊗U(Λ)]†`, momenta relabeled slotwise.
    pub fn boosted(&self, b: &BoostParams<T>) -> Result<Self> {
        let (u, momenta) = two_particle_unitary(&self.momenta, b)?;
        Ok(Self {
            momenta,
            state: self.state.conjugated(&u)?,
        })
    }

    /// Convex mixture of states sharing the same momentum labels.
    pub fn mixture(terms: &[(T, &TwoParticleState<T>)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidDensity("empty mixture".into()))?;
        let momenta = first.1.momenta;
        let parts: Vec<(T, &DensityMatrix<T>)> =
            terms.iter().map(|(w, s)| (*w, &s.state)).collect();
        Self::new(momenta, DensityMatrix::mixture(&parts)?)
    }
}

/// Free function form of [`TwoParticleState::boosted`].
pub fn boost_two_particle<T: Real>(
    s: &TwoParticleState<T>,
    b: &BoostParams<T>,
) -> Result<TwoParticleState<T>> {
    s.boosted(b)
}

/// Free function form of [`TwoParticleState::spin_marginal`].
pub fn spin_marginal<T: Real>(s: &TwoParticleState<T>) -> DensityMatrix<T> {
    s.spin_marginal()
}

/// Index of the momentum basis vector `|k_m, k_n⟩` (zero-based slots).
pub fn momentum_index(m: usize, n: usize) -> usize {
    m * MOMENTA + n
}

/// The 36-dimensional unitary `Σ_{m,n} |m n⟩⟨m n| ⊗ D(R(Λ,k_m)) ⊗ D(R(Λ,k_n))`
/// and the relabeled momenta `Λk_m`.
pub fn two_particle_unitary<T: Real>(
    momenta: &[FourVector<T>; 2],
    b: &BoostParams<T>,
) -> Result<(ComplexMatrix<T>, [FourVector<T>; 2])> {
    let reps = [
        spin1_rep(&wigner_rotation(b, &momenta[0])?)?,
        spin1_rep(&wigner_rotation(b, &momenta[1])?)?,
    ];
    let lambda = boost_matrix(b);
    let spin_dim = QUTRIT * QUTRIT;
    let mut u = ComplexMatrix::zeros(MOMENTA * MOMENTA * spin_dim, MOMENTA * MOMENTA * spin_dim);
    for m in 0..MOMENTA {
        for n in 0..MOMENTA {
            let block = reps[m].kron(&reps[n]);
            let off = momentum_index(m, n) * spin_dim;
            for r in 0..spin_dim {
                for c in 0..spin_dim {
                    u[(off + r, off + c)] = block[(r, c)];
                }
            }
        }
    }
    Ok((u, [lambda.apply(&momenta[0]), lambda.apply(&momenta[1])]))
}

/// `(|k₁,k₂⟩ + |k₂,k₁⟩)/√2` on `C²⊗C²`.
pub fn symmetric_momentum_vector<T: Real>() -> Vec<C<T>> {
    let s = T::one() / T::lit(2.0).sqrt();
    let mut v = vec![C::zero(); MOMENTA * MOMENTA];
    v[momentum_index(0, 1)] = Complex::new(s, T::zero());
    v[momentum_index(1, 0)] = Complex::new(s, T::zero());
    v
}

/// `ρ₁(x) = |ψ_mom⟩⟨ψ_mom| ⊗ ρ_b(x)` with the symmetric momentum state.
pub fn build_rho1<T: Real>(x: T, kinetic_energy: T) -> Result<TwoParticleState<T>> {
    let momenta = momentum_pair(kinetic_energy)?;
    let mom = DensityMatrix::pure(&symmetric_momentum_vector(), vec![MOMENTA, MOMENTA])?;
    TwoParticleState::product(momenta, &mom, &rho_b(x)?)
}

/// `ρ₂ = |k₁,k₂⟩⟨k₁,k₂| ⊗ σ` with `σ` the activation spin state.
pub fn build_rho2<T: Real>(
    kinetic_energy: T,
    interpretation: PhiInterpretation,
) -> Result<TwoParticleState<T>> {
    let momenta = momentum_pair(kinetic_energy)?;
    let mut ket = vec![C::zero(); MOMENTA * MOMENTA];
    ket[momentum_index(0, 1)] = Complex::new(T::one(), T::zero());
    let mom = DensityMatrix::pure(&ket, vec![MOMENTA, MOMENTA])?;
    TwoParticleState::product(momenta, &mom, &activation_spin_state(interpretation))
}

/// `ρ₀(p, x) = p ρ₁(x) + (1 − p) ρ₂`.
pub fn build_rho0<T: Real>(
    p: T,
    x: T,
    kinetic_energy: T,
    interpretation: PhiInterpretation,
) -> Result<TwoParticleState<T>> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::OutOfRange(format!("p = {p} outside [0, 1]")));
    }
    let rho1 = build_rho1(x, kinetic_energy)?;
    let rho2 = build_rho2(kinetic_energy, interpretation)?;
    TwoParticleState::mixture(&[(p, &rho1), (T::one() - p, &rho2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;

    #[test]
    fn lattice_momenta() {
        let k = four_momentum(1.0f64, AxisSign::Plus).unwrap();
        assert_eq!(k.t, 2.0);
        assert!((k.space[0] - 3f64.sqrt()).abs() < 1e-15);
        let km = four_momentum(1.0f64, AxisSign::Minus).unwrap();
        assert!((km.space[0] + 3f64.sqrt()).abs() < 1e-15);
        for e in [0.01, 0.5, 1.0, 7.0, 100.0] {
            assert!(four_momentum(e, AxisSign::Plus).unwrap().is_on_shell());
        }
        assert!(matches!(
            four_momentum(0.0f64, AxisSign::Plus),
            Err(Error::NonPositiveEnergy(_))
        ));
        assert!(four_momentum(-1.0f64, AxisSign::Minus).is_err());
    }

    #[test]
    fn boost_matrix_values() {
        assert!(
            boost_matrix(&BoostParams::along_z(0.0f64)).max_abs_diff(&Lorentz::identity()) < 1e-15
        );
        let l = boost_matrix(&BoostParams::along_z(0.8f64));
        assert!((l.0[0][0] - 1.337435).abs() < 1e-6);
        assert!((l.0[0][3] - 0.888106).abs() < 1e-6);
        assert!((l.0[3][0] - 0.888106).abs() < 1e-6);
        assert!((l.0[3][3] - 1.337435).abs() < 1e-6);
        assert!(l.metric_defect() < 1e-12);
        assert!(matches!(
            BoostParams::new([0.0f64; 3], 1.0),
            Err(Error::BadDirection)
        ));
        let b = BoostParams::new([0.0f64, 3.0, 4.0], 0.3).unwrap();
        assert!((b.direction()[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn standard_boost_values() {
        let rest = standard_boost(&FourVector::<f64>::at_rest()).unwrap();
        assert!(rest.max_abs_diff(&Lorentz::identity()) < 1e-15);
        let k = four_momentum(1.0f64, AxisSign::Plus).unwrap();
        let l = standard_boost(&k).unwrap();
        let r3 = 3f64.sqrt();
        let expected = Lorentz([
            [2.0, r3, 0.0, 0.0],
            [r3, 2.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(l.max_abs_diff(&expected) < 1e-15);
        let back = l.apply(&FourVector::at_rest());
        assert!((back.t - k.t).abs() < 1e-15 && (back.space[0] - k.space[0]).abs() < 1e-15);
        let off = FourVector::new(2.0f64, 0.0, 0.0, 0.0);
        assert!(matches!(standard_boost(&off), Err(Error::OffShell { .. })));
    }

    #[test]
    fn wigner_rotation_cases() {
        let b = BoostParams::along_z(0.8f64);
        let rest = wigner_rotation(&b, &FourVector::at_rest()).unwrap();
        assert!(rest.rotation_defect() < 1e-12);
        assert!(rest.angle() < 1e-7);

        let kz = FourVector::new(2.0f64, 0.0, 0.0, 3f64.sqrt());
        assert!(wigner_rotation(&b, &kz).unwrap().angle() < 1e-7);

        let k = four_momentum(1.0f64, AxisSign::Plus).unwrap();
        let r = wigner_rotation(&b, &k).unwrap();
        assert!(r.rotation_defect() < 1e-12);
        assert!(r.angle() > 0.1);
        // rotation about y: the y axis is fixed
        assert!((r.0[1][1] - 1.0).abs() < 1e-12);
        assert!(r.0[0][1].abs() < 1e-12 && r.0[2][1].abs() < 1e-12);
    }

    #[test]
    fn spin1_intertwiner_is_unitary() {
        let v = spin1_intertwiner::<f64>();
        assert!((&v * &v.dagger()).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        assert!(
            spin1_rep(&Rotation::<f64>::identity())
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(3))
                < 1e-15
        );
        let reflection = Rotation([[1.0f64, 0., 0.], [0., 1., 0.], [0., 0., -1.]]);
        assert!(matches!(
            spin1_rep(&reflection),
            Err(Error::NotRotation { .. })
        ));
    }

    #[test]
    fn spin1_rep_is_homomorphism() {
        let r1 = Rotation::about_axis([0.3f64, -1.0, 0.5], 1.1);
        let r2 = Rotation::about_axis([1.0f64, 0.2, 0.1], -2.3);
        let lhs = spin1_rep(&r1.mul(&r2)).unwrap();
        let rhs = &spin1_rep(&r1).unwrap() * &spin1_rep(&r2).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn z_rotation_is_diagonal_in_spin_basis() {
        // rotations about z act diagonally on the m = -1, 0, 1 labels
        let d = spin1_rep(&Rotation::about_axis([0.0f64, 0.0, 1.0], 0.7)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d[(i, j)].norm() < 1e-14);
                }
            }
        }
        assert!(d[(1, 1)].re > 1.0 - 1e-14);
    }

    #[test]
    fn rho1_marginals() {
        let rho1 = build_rho1(0.1f64, 1.0).unwrap();
        let spin = rho1.spin_marginal();
        assert!(spin.matrix().max_abs_diff(rho_b(0.1f64).unwrap().matrix()) < 1e-14);
        let mom = rho1.momentum_marginal();
        let sym = ComplexMatrix::projector(&symmetric_momentum_vector::<f64>());
        assert!(mom.matrix().max_abs_diff(&sym) < 1e-14);
        assert!((rho1.density().purity() - rho_b(0.1f64).unwrap().purity()).abs() < 1e-14);
        assert!(build_rho1(0.5f64, 1.0).is_err());
        assert!(build_rho1(0.1f64, 0.0).is_err());
    }

    #[test]
    fn unboosted_is_identity() {
        let rho1 = build_rho1(1.0f64 / 15.0, 1.0).unwrap();
        let same = rho1.boosted(&BoostParams::along_z(0.0)).unwrap();
        assert!(
            same.density()
                .matrix()
                .max_abs_diff(rho1.density().matrix())
                < 1e-14
        );
        for i in 0..2 {
            assert!((same.momenta()[i].t - rho1.momenta()[i].t).abs() < 1e-15);
        }
    }

    #[test]
    fn boost_preserves_spectrum_and_shell() {
        let rho0 = build_rho0(0.3f64, 0.1, 1.0, PhiInterpretation::LiteralRenormalized).unwrap();
        let b = BoostParams::new([0.2, -0.4, 1.0], 0.9).unwrap();
        let boosted = rho0.boosted(&b).unwrap();
        let before = rho0.density().eigenvalues();
        let after = boosted.density().eigenvalues();
        for (x, y) in before.iter().zip(&after) {
            assert!((x - y).abs() < 1e-10);
        }
        for k in boosted.momenta() {
            assert!((k.mass_squared() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn pure_momentum_boost_matches_weighted_conjugation() {
        let x = 0.1f64;
        let b = BoostParams::along_z(0.8);
        let rho1 = build_rho1(x, 1.0).unwrap();
        let spin = rho1.boosted(&b).unwrap().spin_marginal();
        let k = rho1.momenta();
        let d1 = spin1_rep(&wigner_rotation(&b, &k[0]).unwrap()).unwrap();
        let d2 = spin1_rep(&wigner_rotation(&b, &k[1]).unwrap()).unwrap();
        let rb = rho_b(x).unwrap();
        let mut expected = rb.matrix().conjugate_by(&d1.kron(&d2)).unwrap().scale(0.5);
        expected.add_scaled(&rb.matrix().conjugate_by(&d2.kron(&d1)).unwrap(), 0.5);
        assert!(spin.matrix().max_abs_diff(&expected) < 1e-13);
        let pt = spin.partial_transpose(1).unwrap();
        assert!(hermitian_eigenvalues(&pt).unwrap()[0] >= -1e-10);
    }

    #[test]
    fn rho0_endpoints() {
        let rho1 = build_rho1(7.0f64 / 60.0, 1.0).unwrap();
        let rho2 = build_rho2(1.0f64, PhiInterpretation::BellMixture).unwrap();
        let p1 = build_rho0(1.0, 7.0 / 60.0, 1.0, PhiInterpretation::BellMixture).unwrap();
        let p0 = build_rho0(0.0, 7.0 / 60.0, 1.0, PhiInterpretation::BellMixture).unwrap();
        assert!(p1.density().matrix().max_abs_diff(rho1.density().matrix()) < 1e-14);
        assert!(p0.density().matrix().max_abs_diff(rho2.density().matrix()) < 1e-14);
        assert!(matches!(
            build_rho0(1.5f64, 0.1, 1.0, PhiInterpretation::BellMixture),
            Err(Error::OutOfRange(_))
        ));
    }
}
