use num_complex::Complex;

use super::eigen::hermitian_eigenvalues;
use super::matrix::{vec_norm, ComplexMatrix, C};
use super::partial::{partial_trace_operator, partial_transpose_operator, realign_operator};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance set used when validating a density matrix.
#[derive(Debug, Clone, Copy)]
pub struct Validation {
    pub hermitian: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
}

impl Validation {
    /// States built internally from exact ingredients.
    pub const CONSTRUCTED: Self = Self {
        hermitian: 1e-12,
        trace: 1e-12,
        min_eigenvalue: 1e-10,
    };
    /// States handed in from outside.
    pub const INPUT: Self = Self {
        hermitian: 1e-10,
        trace: 1e-10,
        min_eigenvalue: 1e-10,
    };
}

/// Trace-one positive semidefinite operator with subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    dims: Vec<usize>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates an externally supplied matrix.
    pub fn new(matrix: ComplexMatrix<T>, dims: Vec<usize>) -> Result<Self> {
        Self::with_validation(matrix, dims, Validation::INPUT)
    }

    pub fn with_validation(
        matrix: ComplexMatrix<T>,
        dims: Vec<usize>,
        v: Validation,
    ) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if dims.is_empty() || dims.iter().product::<usize>() != matrix.rows() {
            return Err(Error::BadSubsystem(format!(
                "dims {dims:?} do not multiply to {}",
                matrix.rows()
            )));
        }
        matrix.check_finite("density matrix")?;
        let dev = matrix.hermitian_deviation();
        if dev > T::tol(v.hermitian) {
            return Err(Error::NotHermitian {
                deviation: dev.as_f64(),
            });
        }
        let matrix = matrix.hermitian_part();
        let tr = matrix.trace().re;
        if (tr - T::one()).abs() > T::tol(v.trace) {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < -T::tol(v.min_eigenvalue) {
            return Err(Error::InvalidDensity(format!("minimum eigenvalue {min}")));
        }
        Ok(Self { matrix, dims })
    }

    /// Internal constructor: Hermitizes and rescales to unit trace, then
    /// validates with the constructed-state tolerances.
    pub(crate) fn from_unnormalized(matrix: ComplexMatrix<T>, dims: Vec<usize>) -> Result<Self> {
        let tr = matrix.trace().re;
        if !(tr > T::zero()) {
            return Err(Error::InvalidDensity(format!("non-positive trace {tr}")));
        }
        Self::with_validation(
            matrix.hermitian_part().scale(T::one() / tr),
            dims,
            Validation::CONSTRUCTED,
        )
    }

    /// `|ψ⟩⟨ψ|` for a (normalized on the fly) vector.
    pub fn pure(psi: &[C<T>], dims: Vec<usize>) -> Result<Self> {
        let n = vec_norm(psi);
        if !(n > T::zero()) {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        let v: Vec<C<T>> = psi.iter().map(|&z| z / n).collect();
        Self::from_unnormalized(ComplexMatrix::projector(&v), dims)
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        let m = ComplexMatrix::identity(n).scale(T::one() / T::lit(n as f64));
        Self { matrix: m, dims }
    }

    /// Convex combination `Σ w_i ρ_i`; weights must be non-negative and sum to one.
    pub fn mixture(terms: &[(T, &DensityMatrix<T>)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidDensity("empty mixture".into()))?;
        let dims = first.1.dims.clone();
        let n = first.1.dim();
        let mut acc = ComplexMatrix::zeros(n, n);
        let mut total = T::zero();
        for &(w, rho) in terms {
            if rho.dims != dims {
                return Err(Error::DimensionMismatch(
                    "mixture of different dimensions".into(),
                ));
            }
            if w < T::zero() {
                return Err(Error::OutOfRange(format!("negative mixture weight {w}")));
            }
            acc.add_scaled(&rho.matrix, w);
            total += w;
        }
        if (total - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::OutOfRange(format!("mixture weights sum to {total}")));
        }
        Self::from_unnormalized(acc, dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigenvalues(&self.matrix).expect("validated density matrices are Hermitian")
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn partial_transpose(&self, subsystem: usize) -> Result<ComplexMatrix<T>> {
        partial_transpose_operator(&self.matrix, &self.dims, subsystem)
    }

    /// Reduced state on `keep`, renormalized to unit trace.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let reduced = partial_trace_operator(&self.matrix, &self.dims, keep)?;
        let dims = keep.iter().map(|&k| self.dims[k]).collect();
        Self::from_unnormalized(reduced, dims)
    }

    /// Realigned matrix for a bipartite state.
    pub fn realign(&self) -> Result<ComplexMatrix<T>> {
        match self.dims[..] {
            [da, db] => realign_operator(&self.matrix, da, db),
            _ => Err(Error::BadSubsystem(format!(
                "realignment needs a bipartite state, got dims {:?}",
                self.dims
            ))),
        }
    }

    pub fn tensor(&self, other: &DensityMatrix<T>) -> DensityMatrix<T> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            matrix: self.matrix.kron(&other.matrix),
            dims,
        }
    }

    /// `U ρ U†` for a unitary `U`.
    pub fn conjugated(&self, u: &ComplexMatrix<T>) -> Result<DensityMatrix<T>> {
        Self::from_unnormalized(self.matrix.conjugate_by(u)?, self.dims.clone())
    }

    /// `tr(O ρ)`, real part.
    pub fn expectation(&self, op: &ComplexMatrix<T>) -> Result<T> {
        Ok(op.trace_product(&self.matrix)?.re)
    }

    pub fn cast<U: Real>(&self) -> DensityMatrix<U> {
        DensityMatrix {
            matrix: self.matrix.cast(),
            dims: self.dims.clone(),
        }
    }
}

/// Computational basis vector `|i⟩` in dimension `n`.
pub fn basis_vector<T: Real>(n: usize, i: usize) -> Vec<C<T>> {
    let mut v = vec![Complex::new(T::zero(), T::zero()); n];
    v[i] = Complex::new(T::one(), T::zero());
    v
}

/// Hilbert–Schmidt distance between two states.
pub fn state_distance<T: Real>(a: &DensityMatrix<T>, b: &DensityMatrix<T>) -> Result<T> {
    super::matrix::hs_distance(a.matrix(), b.matrix())
}
