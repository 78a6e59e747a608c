use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{hs_distance, singular_values, vec_norm, ComplexMatrix, DensityMatrix, C};
use crate::qudit::QUTRIT;
use crate::scalar::Real;

/// Second singular value allowed for vectors produced by the solver.
pub const PRODUCT_DEFECT_TOL: f64 = 1e-6;
/// Second singular value allowed for vectors read from printed digits.
pub const FIXTURE_PRODUCT_DEFECT_TOL: f64 = 1e-4;
const WEIGHT_SUM_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-6;

/// Second singular value of the 3×3 reshaping of a 9-vector.
pub fn product_defect<T: Real>(v: &[C<T>]) -> T {
    let m = ComplexMatrix::from_fn(QUTRIT, QUTRIT, |i, j| v[i * QUTRIT + j]);
    singular_values(&m)[1]
}

/// One product term `(a, b)` standing for `a ⊗ b`.
pub type Factor<T> = (Vec<C<T>>, Vec<C<T>>);

/// Convex decomposition `Σ p_i |ψ_i⟩⟨ψ_i|` into product vectors on `C³ ⊗ C³`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableEnsemble<T> {
    weights: Vec<T>,
    vectors: Vec<Vec<C<T>>>,
    gap: Option<T>,
}

impl<T: Real> SeparableEnsemble<T> {
    pub fn new(weights: Vec<T>, vectors: Vec<Vec<C<T>>>) -> Result<Self> {
        Self::with_product_tolerance(weights, vectors, PRODUCT_DEFECT_TOL)
    }

    /// Validates weights and productness; vectors within `1e-6` of unit norm
    /// are normalized.
    pub fn with_product_tolerance(
        weights: Vec<T>,
        vectors: Vec<Vec<C<T>>>,
        defect_tol: f64,
    ) -> Result<Self> {
        if weights.is_empty() || weights.len() != vectors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} vectors",
                weights.len(),
                vectors.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| !(w > T::zero())) {
            return Err(Error::OutOfRange(format!(
                "ensemble weight {w} is not positive"
            )));
        }
        let total: T = weights.iter().copied().sum();
        if (total - T::one()).abs() > T::tol(WEIGHT_SUM_TOL) {
            return Err(Error::OutOfRange(format!(
                "ensemble weights sum to {total}"
            )));
        }
        let mut unit = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            if v.len() != QUTRIT * QUTRIT {
                return Err(Error::DimensionMismatch(format!(
                    "vector {i} has length {}",
                    v.len()
                )));
            }
            let n = vec_norm(&v);
            if (n - T::one()).abs() > T::tol(NORM_TOL) {
                return Err(Error::OutOfRange(format!("vector {i} has norm {n}")));
            }
            let v: Vec<C<T>> = v.into_iter().map(|z| z / n).collect();
            let d = product_defect(&v);
            if d > T::tol(defect_tol) {
                return Err(Error::OutOfRange(format!(
                    "vector {i} is not a product (defect {d})"
                )));
            }
            unit.push(v);
        }
        Ok(Self {
            weights,
            vectors: unit,
            gap: None,
        })
    }

    /// Builds from unnormalized factor pairs `(a_i, b_i)` with weights `|a_i ⊗ b_i|²`.
    pub fn from_factors(factors: &[Factor<T>]) -> Result<Self> {
        let prods: Vec<Vec<C<T>>> = factors
            .iter()
            .map(|(a, b)| crate::linalg::kron_vec(a, b))
            .collect();
        let norms: Vec<T> = prods.iter().map(|v| vec_norm(v)).collect();
        let total: T = norms.iter().map(|&n| n * n).sum();
        if !(total > T::zero()) {
            return Err(Error::InvalidDensity("all product factors vanish".into()));
        }
        let floor = T::epsilon() * total;
        let mut weights = Vec::new();
        let mut vectors = Vec::new();
        for (v, n) in prods.into_iter().zip(norms) {
            if n * n > floor {
                weights.push(n * n / total);
                vectors.push(v.into_iter().map(|z| z / n).collect());
            }
        }
        let sum: T = weights.iter().copied().sum();
        let weights = weights.into_iter().map(|w| w / sum).collect();
        Self::new(weights, vectors)
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn vectors(&self) -> &[Vec<C<T>>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn achieved_gap(&self) -> Option<T> {
        self.gap
    }

    /// Records `‖Σ p_i P_i − ρ‖_HS` for the target `rho`.
    pub fn with_gap_to(mut self, rho: &DensityMatrix<T>) -> Result<Self> {
        self.gap = Some(self.gap_to(rho)?);
        Ok(self)
    }

    pub fn gap_to(&self, rho: &DensityMatrix<T>) -> Result<T> {
        hs_distance(&self.mixture_matrix(), rho.matrix())
    }

    pub fn max_product_defect(&self) -> T {
        self.vectors
            .iter()
            .map(|v| product_defect(v))
            .fold(T::zero(), |a, b| a.max(b))
    }

    fn mixture_matrix(&self) -> ComplexMatrix<T> {
        let n = QUTRIT * QUTRIT;
        let mut m = ComplexMatrix::zeros(n, n);
        for (w, v) in self.weights.iter().zip(&self.vectors) {
            for r in 0..n {
                if v[r].is_zero() {
                    continue;
                }
                for c in 0..n {
                    m[(r, c)] += v[r] * v[c].conj() * Complex::new(*w, T::zero());
                }
            }
        }
        m
    }
}

/// The mixture `Σ p_i |ψ_i⟩⟨ψ_i|` with dims `[3, 3]`.
pub fn ensemble_state<T: Real>(e: &SeparableEnsemble<T>) -> DensityMatrix<T> {
    DensityMatrix::from_unnormalized(e.mixture_matrix(), vec![QUTRIT, QUTRIT])
        .expect("convex mixture of unit vectors is a state")
}
