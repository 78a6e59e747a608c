//! Qutrit constructions: Weyl operators, the Weyl–Bell basis, magic-simplex
//! states and mutually unbiased bases.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, C};
use crate::scalar::Real;

pub const QUTRIT: usize = 3;

/// Spin projections `-1, 0, 1` are stored at computational indices `0, 1, 2`.
pub const SPIN_PROJECTIONS: [i8; QUTRIT] = [-1, 0, 1];

pub fn spin_index(projection: i8) -> Option<usize> {
    SPIN_PROJECTIONS.iter().position(|&m| m == projection)
}

pub fn spin_projection(index: usize) -> Option<i8> {
    SPIN_PROJECTIONS.get(index).copied()
}

/// `ωⁿ` with `ω = e^{2πi/3}`.
pub fn omega_pow<T: Real>(n: usize) -> C<T> {
    let angle = T::TAU() * T::lit((n % QUTRIT) as f64) / T::lit(QUTRIT as f64);
    Complex::from_polar(T::one(), angle)
}

/// `W_{k,l} = Σ_j ω^{jk} |j⟩⟨j+l|`, indices mod 3.
pub fn weyl<T: Real>(k: usize, l: usize) -> ComplexMatrix<T> {
    let mut w = ComplexMatrix::zeros(QUTRIT, QUTRIT);
    for j in 0..QUTRIT {
        w[(j, (j + l) % QUTRIT)] = omega_pow(j * k);
    }
    w
}

/// `|Ω_{k,l}⟩ = (W_{k,l} ⊗ 1)|Ω_{0,0}⟩` with `|Ω_{0,0}⟩ = (|00⟩+|11⟩+|22⟩)/√3`.
pub fn bell_state<T: Real>(k: usize, l: usize) -> Vec<C<T>> {
    // (W ⊗ 1)|Ω00⟩ = Σ_j W|j⟩ ⊗ |j⟩ / √3, and W|j⟩ = ω^{(j-l)k} |j-l⟩.
    let norm = T::one() / T::lit(QUTRIT as f64).sqrt();
    let mut v = vec![C::zero(); QUTRIT * QUTRIT];
    let w = weyl::<T>(k, l);
    for j in 0..QUTRIT {
        for a in 0..QUTRIT {
            v[a * QUTRIT + j] += w[(a, j)] * norm;
        }
    }
    v
}

pub fn bell_projector<T: Real>(k: usize, l: usize) -> ComplexMatrix<T> {
    ComplexMatrix::projector(&bell_state::<T>(k, l))
}

/// Probabilities `c_{k,l}` over the nine Bell projectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagicCoefficients<T> {
    c: [[T; QUTRIT]; QUTRIT],
}

impl<T: Real> MagicCoefficients<T> {
    pub fn new(c: [[T; QUTRIT]; QUTRIT]) -> Result<Self> {
        let mut sum = T::zero();
        for (k, row) in c.iter().enumerate() {
            for (l, &v) in row.iter().enumerate() {
                if !(v >= T::zero()) {
                    return Err(Error::InvalidCoefficients(format!("c[{k}][{l}] = {v}")));
                }
                sum += v;
            }
        }
        if (sum - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::InvalidCoefficients(format!(
                "coefficients sum to {sum}"
            )));
        }
        Ok(Self { c })
    }

    pub fn from_flat(flat: &[T]) -> Result<Self> {
        if flat.len() != QUTRIT * QUTRIT {
            return Err(Error::InvalidCoefficients(format!(
                "{} coefficients, expected 9",
                flat.len()
            )));
        }
        let mut c = [[T::zero(); QUTRIT]; QUTRIT];
        for (i, &v) in flat.iter().enumerate() {
            c[i / QUTRIT][i % QUTRIT] = v;
        }
        Self::new(c)
    }

    pub fn uniform() -> Self {
        Self {
            c: [[T::one() / T::lit(9.0); QUTRIT]; QUTRIT],
        }
    }

    pub fn get(&self, k: usize, l: usize) -> T {
        self.c[k][l]
    }

    pub fn as_array(&self) -> &[[T; QUTRIT]; QUTRIT] {
        &self.c
    }

    pub fn flat(&self) -> Vec<T> {
        self.c.iter().flatten().copied().collect()
    }
}

/// `ρ = Σ c_{k,l} P_{k,l}`.
pub fn simplex_state<T: Real>(c: &MagicCoefficients<T>) -> DensityMatrix<T> {
    let mut m = ComplexMatrix::zeros(9, 9);
    for k in 0..QUTRIT {
        for l in 0..QUTRIT {
            let w = c.get(k, l);
            if w > T::zero() {
                m.add_scaled(&bell_projector(k, l), w);
            }
        }
    }
    DensityMatrix::from_unnormalized(m, vec![QUTRIT, QUTRIT])
        .expect("Bell-diagonal mixtures are valid states")
}

/// Coefficient table of the one-parameter bound entangled family.
pub fn rho_b_coefficients<T: Real>(x: T) -> Result<MagicCoefficients<T>> {
    let third = T::one() / T::lit(3.0);
    if !(x >= T::zero() && x <= third + T::tol(1e-15)) {
        return Err(Error::OutOfRange(format!("x = {x} outside [0, 1/3]")));
    }
    let x = x.min(third);
    let z = T::zero();
    let r = (third - x).max(z);
    MagicCoefficients::new([[x + x, z, r], [z, x, r], [z, z, r]])
}

/// `ρ_b(x)`, PPT for `x ≤ 2/15`, entangled for `x > 0`.
pub fn rho_b<T: Real>(x: T) -> Result<DensityMatrix<T>> {
    Ok(simplex_state(&rho_b_coefficients(x)?))
}

/// Coefficients of the spin component mixed into the activation example.
pub fn activation_coefficients<T: Real>() -> [[T; QUTRIT]; QUTRIT] {
    let f = |n: f64, d: f64| T::lit(n) / T::lit(d);
    [
        [T::zero(), f(2., 9.), f(2., 9.)],
        [T::zero(), f(2., 9.), f(1., 18.)],
        [f(5., 18.), T::zero(), T::zero()],
    ]
}

/// How the activation coefficient table is turned into a spin state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiInterpretation {
    /// Ket `Σ a_{k,l}|Ω_{k,l}⟩` divided by its norm.
    LiteralRenormalized,
    /// Ket `Σ √a_{k,l}|Ω_{k,l}⟩`, already normalized.
    SqrtAmplitudes,
    /// Bell-diagonal mixture `Σ a_{k,l} P_{k,l}` (coefficients read as probabilities).
    #[default]
    BellMixture,
}

impl PhiInterpretation {
    pub const ALL: [PhiInterpretation; 3] = [
        PhiInterpretation::LiteralRenormalized,
        PhiInterpretation::SqrtAmplitudes,
        PhiInterpretation::BellMixture,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PhiInterpretation::LiteralRenormalized => "literal-renormalized",
            PhiInterpretation::SqrtAmplitudes => "sqrt-amplitudes",
            PhiInterpretation::BellMixture => "bell-mixture",
        }
    }
}

impl fmt::Display for PhiInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PhiInterpretation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PhiInterpretation::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown interpretation `{s}`")))
    }
}

/// Unnormalized superposition `Σ a_{k,l}|Ω_{k,l}⟩`.
pub fn phi_spin_raw<T: Real>() -> Vec<C<T>> {
    superpose(&activation_coefficients())
}

fn superpose<T: Real>(amps: &[[T; QUTRIT]; QUTRIT]) -> Vec<C<T>> {
    let mut v = vec![C::zero(); 9];
    for (k, row) in amps.iter().enumerate() {
        for (l, &a) in row.iter().enumerate() {
            if a != T::zero() {
                for (dst, src) in v.iter_mut().zip(bell_state::<T>(k, l)) {
                    *dst += src * a;
                }
            }
        }
    }
    v
}

/// Unit ket for one of the two ket readings; `None` for [`PhiInterpretation::BellMixture`].
pub fn phi_spin<T: Real>(interpretation: PhiInterpretation) -> Option<Vec<C<T>>> {
    let raw = match interpretation {
        PhiInterpretation::LiteralRenormalized => phi_spin_raw(),
        PhiInterpretation::SqrtAmplitudes => {
            superpose(&activation_coefficients::<T>().map(|row| row.map(|a| a.sqrt())))
        }
        PhiInterpretation::BellMixture => return None,
    };
    Some(crate::linalg::normalized(&raw))
}

/// Spin state used in the activation example under the chosen interpretation.
pub fn activation_spin_state<T: Real>(interpretation: PhiInterpretation) -> DensityMatrix<T> {
    match phi_spin::<T>(interpretation) {
        Some(ket) => DensityMatrix::pure(&ket, vec![QUTRIT, QUTRIT]).expect("unit ket"),
        None => simplex_state(
            &MagicCoefficients::new(activation_coefficients()).expect("table is a distribution"),
        ),
    }
}

/// Four mutually unbiased qutrit bases, each stored with its vectors as columns.
#[derive(Debug, Clone)]
pub struct MubSet<T> {
    bases: Vec<ComplexMatrix<T>>,
}

impl<T: Real> MubSet<T> {
    pub fn bases(&self) -> &[ComplexMatrix<T>] {
        &self.bases
    }

    pub fn vector(&self, basis: usize, i: usize) -> Vec<C<T>> {
        self.bases[basis].column(i)
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Largest deviation of `|⟨i_k|j_l⟩|²` from `δ_{kl}δ_{ij} + (1−δ_{kl})/3`.
    pub fn unbiasedness_defect(&self) -> T {
        let third = T::one() / T::lit(QUTRIT as f64);
        let mut worst = T::zero();
        for (k, bk) in self.bases.iter().enumerate() {
            for (l, bl) in self.bases.iter().enumerate() {
                let gram = &bk.dagger() * bl;
                for i in 0..QUTRIT {
                    for j in 0..QUTRIT {
                        let expected = if k == l {
                            if i == j {
                                T::one()
                            } else {
                                T::zero()
                            }
                        } else {
                            third
                        };
                        worst = worst.max((gram[(i, j)].norm_sqr() - expected).abs());
                    }
                }
            }
        }
        worst
    }
}

/// Wootters–Fields bases: the computational basis, then for `r = 0, 1, 2`
/// the vectors `|j⟩_r = Σ_n ω^{r n² + j n}|n⟩/√3` (`r = 0` is the Fourier basis).
pub fn mub_bases<T: Real>() -> MubSet<T> {
    let norm = T::one() / T::lit(QUTRIT as f64).sqrt();
    let mut bases = vec![ComplexMatrix::identity(QUTRIT)];
    for r in 0..QUTRIT {
        bases.push(ComplexMatrix::from_fn(QUTRIT, QUTRIT, |n, j| {
            omega_pow::<T>(r * n * n + j * n) * norm
        }));
    }
    MubSet { bases }
}
