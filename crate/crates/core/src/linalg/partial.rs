//! Subsystem operations on operators over `⊗_i C^{dims[i]}`, first factor most significant.

use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_dims<T: Real>(m: &ComplexMatrix<T>, dims: &[usize]) -> Result<()> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total || dims.is_empty() {
        return Err(Error::BadSubsystem(format!(
            "dims {dims:?} do not match a {}x{} operator",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn digits(mut idx: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
}

fn compose(digits: &[usize], dims: &[usize], select: &[usize]) -> usize {
    select.iter().fold(0, |acc, &s| acc * dims[s] + digits[s])
}

/// Partial trace keeping the (sorted, distinct) subsystems in `keep`. No renormalization.
pub fn partial_trace_operator<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix<T>> {
    check_dims(m, dims)?;
    if keep.is_empty()
        || keep.windows(2).any(|w| w[0] >= w[1])
        || keep.iter().any(|&k| k >= dims.len())
    {
        return Err(Error::BadSubsystem(format!(
            "keep set {keep:?} must be a non-empty increasing subset of 0..{}",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let out_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let n = m.rows();
    let mut dr = vec![0; dims.len()];
    let mut dc = vec![0; dims.len()];
    for r in 0..n {
        digits(r, dims, &mut dr);
        let or = compose(&dr, dims, keep);
        for c in 0..n {
            digits(c, dims, &mut dc);
            if traced.iter().all(|&t| dr[t] == dc[t]) {
                let oc = compose(&dc, dims, keep);
                let z = m[(r, c)];
                if !z.is_zero() {
                    out[(or, oc)] += z;
                }
            }
        }
    }
    Ok(out)
}

/// Transposes the indices of one subsystem: `[ρ^{T_s}]_{..i_s..,..j_s..} = ρ_{..j_s..,..i_s..}`.
pub fn partial_transpose_operator<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &[usize],
    subsystem: usize,
) -> Result<ComplexMatrix<T>> {
    check_dims(m, dims)?;
    if subsystem >= dims.len() {
        return Err(Error::BadSubsystem(format!(
            "subsystem {subsystem} out of range for {} factors",
            dims.len()
        )));
    }
    let stride: usize = dims[subsystem + 1..].iter().product();
    let d = dims[subsystem];
    let n = m.rows();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let ir = (r / stride) % d;
        let ic = (c / stride) % d;
        let r2 = r - ir * stride + ic * stride;
        let c2 = c - ic * stride + ir * stride;
        m[(r2, c2)]
    }))
}

/// Realignment `[ρ̃]_{ij,ab} = ρ_{ia,jb}` of a `d_A d_B` operator into a `d_A² × d_B²` matrix.
pub fn realign_operator<T: Real>(
    m: &ComplexMatrix<T>,
    da: usize,
    db: usize,
) -> Result<ComplexMatrix<T>> {
    check_dims(m, &[da, db])?;
    Ok(ComplexMatrix::from_fn(da * da, db * db, |row, col| {
        let (i, j) = (row / da, row % da);
        let (a, b) = (col / db, col % db);
        m[(i * db + a, j * db + b)]
    }))
}
