//! Product-state extrema of `⟨a,b|W|a,b⟩` by alternating eigenvector updates.

use num_complex::Complex;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{extremal_eigenpair, normalized, ComplexMatrix, C};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeesawOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Convergence when successive values differ by less than this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SeesawOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 0,
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

/// Interval of witness values reached by product states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparableWindow {
    pub lower: f64,
    pub upper: f64,
    /// Restarts (per direction) that met the convergence criterion.
    pub converged: usize,
}

/// Generator for restart `index` of a run seeded with `seed`.
pub fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub(crate) fn random_unit_vector<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<C<T>> {
    let v: Vec<C<T>> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect();
    normalized(&v)
}

/// `Σ_{ab} W_{ia,jb} conj(b_a) b_b`, an operator on the first factor.
fn contract_second<T: Real>(
    w: &ComplexMatrix<T>,
    da: usize,
    db: usize,
    b: &[C<T>],
) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(da, da, |i, j| {
        let mut acc = C::zero();
        for (x, bx) in b.iter().enumerate() {
            for (y, by) in b.iter().enumerate() {
                acc += w[(i * db + x, j * db + y)] * bx.conj() * by;
            }
        }
        acc
    })
}

/// `Σ_{ij} W_{ia,jb} conj(a_i) a_j`, an operator on the second factor.
fn contract_first<T: Real>(w: &ComplexMatrix<T>, db: usize, a: &[C<T>]) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(db, db, |x, y| {
        let mut acc = C::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                acc += w[(i * db + x, j * db + y)] * ai.conj() * aj;
            }
        }
        acc
    })
}

/// One seesaw run; returns the final value and whether it converged.
pub fn seesaw_run<T: Real>(
    w: &ComplexMatrix<T>,
    dims: [usize; 2],
    largest: bool,
    start: Vec<C<T>>,
    tol: f64,
    max_iter: usize,
) -> Result<(T, bool)> {
    let [da, db] = dims;
    let mut b = start;
    let mut prev: Option<T> = None;
    let tol = T::tol(tol);
    for _ in 0..max_iter {
        let (_, a) = extremal_eigenpair(&contract_second(w, da, db, &b), largest)?;
        let (val, nb) = extremal_eigenpair(&contract_first(w, db, &a), largest)?;
        b = nb;
        if let Some(p) = prev {
            if (val - p).abs() < tol {
                return Ok((val, true));
            }
        }
        prev = Some(val);
    }
    prev.map(|v| (v, false))
        .ok_or_else(|| Error::NoConvergence("seesaw budget of zero iterations".into()))
}

/// Lower and upper separable bounds of a Hermitian `w` on `C^{da} ⊗ C^{db}`.
///
/// Restart `i` draws its starting vector from [`restart_rng`]`(seed, i)`, so a
/// larger restart count evaluates a superset of starts and can only widen the
/// window.
pub fn separable_bounds<T: Real>(
    w: &ComplexMatrix<T>,
    dims: [usize; 2],
    opts: &SeesawOptions,
) -> Result<SeparableWindow> {
    let [da, db] = dims;
    if !w.is_square() || w.rows() != da * db {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on dims {dims:?}",
            w.rows(),
            w.cols()
        )));
    }
    if !w.is_hermitian(T::tol(1e-10) * T::one().max(w.max_abs())) {
        return Err(Error::NotHermitian {
            deviation: w.hermitian_deviation().as_f64(),
        });
    }
    if opts.restarts == 0 {
        return Err(Error::OutOfRange(
            "seesaw needs at least one restart".into(),
        ));
    }
    let runs: Vec<Result<[(T, bool); 2]>> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| {
            let start: Vec<C<T>> = random_unit_vector(&mut restart_rng(opts.seed, i), db);
            let lo = seesaw_run(w, dims, false, start.clone(), opts.tol, opts.max_iter)?;
            let hi = seesaw_run(w, dims, true, start, opts.tol, opts.max_iter)?;
            Ok([lo, hi])
        })
        .collect();
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    let (mut conv_lo, mut conv_hi) = (0, 0);
    for r in runs {
        let [(lo, clo), (hi, chi)] = r?;
        lower = lower.min(lo.as_f64());
        upper = upper.max(hi.as_f64());
        conv_lo += usize::from(clo);
        conv_hi += usize::from(chi);
    }
    let converged = conv_lo.min(conv_hi);
    if converged == 0 {
        return Err(Error::NoConvergence(format!(
            "no seesaw restart converged within {} iterations",
            opts.max_iter
        )));
    }
    Ok(SeparableWindow {
        lower,
        upper,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::bell_projector;

    #[test]
    fn identity_window_is_a_point() {
        let w = ComplexMatrix::<f64>::identity(9);
        let win = separable_bounds(
            &w,
            [3, 3],
            &SeesawOptions {
                restarts: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((win.lower - 1.0).abs() < 1e-12 && (win.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_projector_window() {
        // product states overlap a maximally entangled qutrit state by at most 1/3
        let w = bell_projector::<f64>(1, 2);
        let win = separable_bounds(
            &w,
            [3, 3],
            &SeesawOptions {
                restarts: 8,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(win.lower.abs() < 1e-9);
        assert!((win.upper - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn product_operator_window() {
        let a = ComplexMatrix::<f64>::diagonal(&[C::new(1., 0.), C::new(2., 0.)]);
        let b = ComplexMatrix::<f64>::diagonal(&[C::new(-1., 0.), C::new(0.5, 0.), C::new(3., 0.)]);
        let win = separable_bounds(
            &a.kron(&b),
            [2, 3],
            &SeesawOptions {
                restarts: 8,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((win.lower + 2.0).abs() < 1e-9);
        assert!((win.upper - 6.0).abs() < 1e-9);
    }

    #[test]
    fn deterministic_and_monotone_in_restarts() {
        let w = &bell_projector::<f64>(0, 1) + &bell_projector::<f64>(2, 2).scale(0.5);
        let opts = |r| SeesawOptions {
            restarts: r,
            seed: 9,
            ..Default::default()
        };
        let a = separable_bounds(&w, [3, 3], &opts(6)).unwrap();
        let b = separable_bounds(&w, [3, 3], &opts(6)).unwrap();
        assert_eq!(a, b);
        let c = separable_bounds(&w, [3, 3], &opts(12)).unwrap();
        assert!(c.lower <= a.lower && c.upper >= a.upper);
    }

    #[test]
    fn rejects_bad_input() {
        let w = ComplexMatrix::<f64>::identity(9);
        assert!(separable_bounds(&w, [2, 3], &SeesawOptions::default()).is_err());
        let bad = SeesawOptions {
            restarts: 0,
            ..Default::default()
        };
        assert!(separable_bounds(&w, [3, 3], &bad).is_err());
        let capped = SeesawOptions {
            restarts: 2,
            max_iter: 1,
            ..Default::default()
        };
        assert!(matches!(
            separable_bounds(&bell_projector::<f64>(0, 0), [3, 3], &capped),
            Err(Error::NoConvergence(_))
        ));
    }
}
