//! Cyclic Jacobi diagonalization for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classic real symmetric rotation. A sweep visits
//! every pair `p < q` once. Iteration stops when the off-diagonal Frobenius
//! mass drops below `1e-14 · max(1, ‖A‖_F)` or after [`MAX_SWEEPS`].

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::{ComplexMatrix, C};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-14;
/// Hermiticity tolerance accepted on input.
pub const INPUT_HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors (as columns).
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn vector(&self, i: usize) -> Vec<C<T>> {
        self.vectors.column(i)
    }
}

fn off_diagonal_mass<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn check_input<T: Real>(h: &ComplexMatrix<T>) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let dev = h.hermitian_deviation();
    let scale = T::one().max(h.max_abs());
    if !(dev <= T::tol(INPUT_HERMITIAN_TOL) * scale) {
        return Err(Error::NotHermitian {
            deviation: dev.as_f64(),
        });
    }
    Ok(())
}

fn jacobi<T: Real>(h: &ComplexMatrix<T>, want_vectors: bool) -> Result<HermitianEigen<T>> {
    check_input(h)?;
    let n = h.rows();
    if n == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let mut a = h.hermitian_part();
    let mut v = if want_vectors {
        ComplexMatrix::identity(n)
    } else {
        ComplexMatrix::zeros(0, 0)
    };
    let threshold = T::tol(OFF_DIAGONAL_TOL) * T::one().max(a.frobenius_norm());

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                // a_pq = r e^{iφ}; d_q = e^{-iφ} makes the pivot real and positive.
                let dq = apq.conj() / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (T::lit(2.0) * r);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = t * cs;
                // J = diag(1, d_q) · [[c, s], [-s, c]] restricted to (p, q).
                let jpp = Complex::new(cs, T::zero());
                let jpq = Complex::new(sn, T::zero());
                let jqp = dq * (-sn);
                let jqq = dq * cs;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = C::zero();
                a[(q, p)] = C::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());

                if want_vectors {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * jpp + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }
    if !converged && off_diagonal_mass(&a) > threshold {
        return Err(Error::NoConvergence(format!(
            "Jacobi did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let values: Vec<T> = order.iter().map(|&i| a[(i, i)].re).collect();
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("hermitian_eigen"));
    }
    let vectors = if want_vectors {
        ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])])
    } else {
        v
    };
    Ok(HermitianEigen { values, vectors })
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    jacobi(h, true)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues<T: Real>(h: &ComplexMatrix<T>) -> Result<Vec<T>> {
    Ok(jacobi(h, false)?.values)
}

/// Singular values, descending, as `√λ(m†m)` clamped at zero.
pub fn singular_values<T: Real>(m: &ComplexMatrix<T>) -> Vec<T> {
    let gram = &m.dagger() * m;
    let mut vals = hermitian_eigenvalues(&gram).expect("m†m is Hermitian by construction");
    vals.reverse();
    vals.into_iter().map(|x| x.max(T::zero()).sqrt()).collect()
}

/// Eigenvector of the largest (or smallest) eigenvalue.
pub fn extremal_eigenpair<T: Real>(h: &ComplexMatrix<T>, largest: bool) -> Result<(T, Vec<C<T>>)> {
    let eig = hermitian_eigen(h)?;
    let i = if largest { eig.values.len() - 1 } else { 0 };
    Ok((eig.values[i], eig.vector(i)))
}

/// Solves `A x = b` for symmetric positive definite `A` (row-major, `n×n`).
/// Returns `None` when `A` is not numerically positive definite.
pub fn cholesky_solve<T: Real>(a: &[T], n: usize, b: &[T]) -> Option<Vec<T>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let mut l = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    let mut y = vec![T::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    Some(x)
}
