use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub type C<T> = Complex<T>;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[T]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            entries.iter().map(|&x| C::new(x, T::zero())).collect(),
        )
    }

    pub fn diagonal(diag: &[C<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[C<T>], v: &[C<T>]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &[C<T>]) -> Self {
        Self::outer(v, v)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<C<T>> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Checked product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `U A U†`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.dagger())
    }

    pub fn apply(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `⟨v|A|v⟩` for square `A`.
    pub fn expectation(&self, v: &[C<T>]) -> Result<C<T>> {
        let av = self.apply(v)?;
        Ok(v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum())
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<C<T>> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch(
                "trace of non-square product".into(),
            ));
        }
        let mut acc = C::zero();
        for r in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(r, k)] * other[(k, r)];
            }
        }
        Ok(acc)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (br, bc) = (other.rows, other.cols);
        Self::from_fn(self.rows * br, self.cols * bc, |r, c| {
            self[(r / br, c / bc)] * other[(r % br, c % bc)]
        })
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Largest entrywise modulus of `self − other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.rows != other.rows || self.cols != other.cols {
            return T::infinity();
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn hermitian_deviation(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut dev = T::zero();
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |r, c| {
            (self[(r, c)] + self[(c, r)].conj()) * half
        })
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn check_finite(&self, op: &'static str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite(op))
        }
    }

    /// Converts the scalar type entrywise.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| C::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
                .collect(),
        }
    }
}

/// Hilbert–Schmidt distance `√tr((a−b)†(a−b))`.
pub fn hs_distance<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<T> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<T>()
        .sqrt())
}

pub fn vec_norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// `⟨u|v⟩`.
pub fn inner<T: Real>(u: &[C<T>], v: &[C<T>]) -> C<T> {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn kron_vec<T: Real>(u: &[C<T>], v: &[C<T>]) -> Vec<C<T>> {
    u.iter()
        .flat_map(|&a| v.iter().map(move |&b| a * b))
        .collect()
}

pub fn normalized<T: Real>(v: &[C<T>]) -> Vec<C<T>> {
    let n = vec_norm(v);
    v.iter().map(|&z| z / n).collect()
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C<T> {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C<T> {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    /// Panics on a shape mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sub"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> ComplexMatrix<T> {
    /// In-place `self += s · other`.
    pub fn add_scaled(&mut self, other: &Self, s: T) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = &self.data[r * self.cols + c];
                write!(f, "({:?}, {:?}) ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn pseudo_random(n: usize, seed: u64) -> ComplexMatrix<f64> {
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        let i3 = ComplexMatrix::<f64>::identity(3);
        assert_eq!(i2.kron(&i3), ComplexMatrix::identity(6));

        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let expected = ComplexMatrix::diagonal(&[c(1., 0.), c(1., 0.), c(2., 0.), c(2., 0.)]);
        assert_eq!(d.kron(&i2), expected);
    }

    #[test]
    fn kron_matches_index_formula() {
        let a = pseudo_random(3, 1);
        let b = pseudo_random(3, 2);
        let k = a.kron(&b);
        for i in 0..3 {
            for j in 0..3 {
                for kk in 0..3 {
                    for l in 0..3 {
                        let lhs = k[(i * 3 + j, kk * 3 + l)];
                        assert!((lhs - a[(i, kk)] * b[(j, l)]).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn hs_distance_closed_forms() {
        let a = ComplexMatrix::diagonal(&[c(1., 0.), c(0., 0.)]);
        let b = ComplexMatrix::diagonal(&[c(0., 0.), c(1., 0.)]);
        assert_eq!(hs_distance(&a, &a).unwrap(), 0.0);
        assert!((hs_distance(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            hs_distance(&a, &ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn checked_product_rejects_bad_shapes() {
        let a = ComplexMatrix::<f64>::zeros(2, 3);
        assert!(a.matmul(&a).is_err());
        assert_eq!(a.matmul(&a.dagger()).unwrap().rows(), 2);
    }

    #[test]
    fn trace_product_agrees_with_full_product() {
        let a = pseudo_random(5, 7);
        let b = pseudo_random(5, 9);
        let full = (&a * &b).trace();
        assert!((a.trace_product(&b).unwrap() - full).norm() < 1e-14);
    }
}
