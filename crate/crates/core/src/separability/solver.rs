//! Levenberg–Marquardt fit of `Σ_i (a_i⊗b_i)(a_i⊗b_i)†` to a 3⊗3 state.
//!
//! The factors are unnormalized complex 3-vectors, so weights are the squared
//! norms of the products and no simplex constraint is needed. The residual is
//! the real and imaginary parts of `σ − ρ`; its norm is the Hilbert–Schmidt gap.

use num_complex::Complex;
use num_traits::Zero;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ensemble::{Factor, SeparableEnsemble};
use crate::analysis::restart_rng;
use crate::error::{Error, Result};
use crate::linalg::{cholesky_solve, DensityMatrix, C};
use crate::qudit::QUTRIT;
use crate::scalar::Real;

const N: usize = QUTRIT * QUTRIT;
const RESIDUALS: usize = 2 * N * N;
const PARAMS_PER_TERM: usize = 4 * QUTRIT;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub k: usize,
    pub restarts: usize,
    pub tol: f64,
    pub seed: u64,
    /// Iterations per restart, rejected steps included.
    pub max_iter: usize,
    /// A restart stops once this many accepted steps improve the gap by less
    /// than one part in a million.
    pub stall_window: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            k: 10,
            restarts: 16,
            tol: 1e-6,
            seed: 0,
            max_iter: 2000,
            stall_window: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub k: usize,
    pub restarts: usize,
    pub tol: f64,
    pub seed: u64,
    pub best_gap: f64,
    pub best_restart: usize,
    /// Iterations used by the best restart.
    pub iterations: usize,
    /// Final gap of every restart, in restart order.
    pub restart_gaps: Vec<f64>,
    /// Gap after each accepted step of the best restart.
    pub gap_history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certification<T> {
    Certified {
        ensemble: SeparableEnsemble<T>,
        report: SolverReport,
    },
    /// No ensemble reached the tolerance; `best` is the closest one found.
    NoCertificate {
        best: Option<SeparableEnsemble<T>>,
        report: SolverReport,
    },
}

impl<T: Real> Certification<T> {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }

    pub fn report(&self) -> &SolverReport {
        match self {
            Certification::Certified { report, .. }
            | Certification::NoCertificate { report, .. } => report,
        }
    }

    pub fn ensemble(&self) -> Option<&SeparableEnsemble<T>> {
        match self {
            Certification::Certified { ensemble, .. } => Some(ensemble),
            Certification::NoCertificate { best, .. } => best.as_ref(),
        }
    }

    pub fn best_gap(&self) -> f64 {
        self.report().best_gap
    }
}

fn term<T: Real>(theta: &[T], i: usize) -> ([C<T>; QUTRIT], [C<T>; QUTRIT]) {
    let p = &theta[i * PARAMS_PER_TERM..(i + 1) * PARAMS_PER_TERM];
    let a = std::array::from_fn(|c| Complex::new(p[c], p[QUTRIT + c]));
    let b = std::array::from_fn(|c| Complex::new(p[2 * QUTRIT + c], p[3 * QUTRIT + c]));
    (a, b)
}

fn product<T: Real>(a: &[C<T>; QUTRIT], b: &[C<T>; QUTRIT]) -> [C<T>; N] {
    std::array::from_fn(|r| a[r / QUTRIT] * b[r % QUTRIT])
}

/// Residual vector `[Re(σ−ρ); Im(σ−ρ)]`, row-major within each half.
pub fn residual<T: Real>(theta: &[T], rho: &DensityMatrix<T>) -> Vec<T> {
    let k = theta.len() / PARAMS_PER_TERM;
    let mut d: Vec<C<T>> = rho.matrix().as_slice().iter().map(|z| -*z).collect();
    for i in 0..k {
        let (a, b) = term(theta, i);
        let v = product(&a, &b);
        for r in 0..N {
            for c in 0..N {
                d[r * N + c] += v[r] * v[c].conj();
            }
        }
    }
    let mut out = Vec::with_capacity(RESIDUALS);
    out.extend(d.iter().map(|z| z.re));
    out.extend(d.iter().map(|z| z.im));
    out
}

/// Analytic Jacobian of [`residual`], stored column by column.
///
/// A real parameter moves `v = a⊗b` by `u`, which moves `σ` by `u v† + v u†`.
pub fn jacobian<T: Real>(theta: &[T]) -> Vec<T> {
    let k = theta.len() / PARAMS_PER_TERM;
    let mut jac = vec![T::zero(); theta.len() * RESIDUALS];
    let i_unit = Complex::new(T::zero(), T::one());
    for t in 0..k {
        let (a, b) = term(theta, t);
        let v = product(&a, &b);
        for local in 0..PARAMS_PER_TERM {
            let c = local % QUTRIT;
            let phase = if (local / QUTRIT) % 2 == 1 {
                i_unit
            } else {
                Complex::new(T::one(), T::zero())
            };
            let mut u = [C::<T>::zero(); N];
            if local < 2 * QUTRIT {
                for y in 0..QUTRIT {
                    u[c * QUTRIT + y] = phase * b[y];
                }
            } else {
                for x in 0..QUTRIT {
                    u[x * QUTRIT + c] = phase * a[x];
                }
            }
            let col = &mut jac[(t * PARAMS_PER_TERM + local) * RESIDUALS..][..RESIDUALS];
            for r in 0..N {
                for s in 0..N {
                    let ds = u[r] * v[s].conj() + v[r] * u[s].conj();
                    col[r * N + s] = ds.re;
                    col[N * N + r * N + s] = ds.im;
                }
            }
        }
    }
    jac
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

struct Run<T> {
    theta: Vec<T>,
    iterations: usize,
    history: Vec<f64>,
}

fn normal_equations<T: Real>(theta: &[T], r: &[T]) -> (Vec<T>, Vec<T>) {
    let p = theta.len();
    let jac = jacobian(theta);
    let col = |i: usize| &jac[i * RESIDUALS..(i + 1) * RESIDUALS];
    let mut jtj = vec![T::zero(); p * p];
    for i in 0..p {
        for j in i..p {
            let s: T = col(i).iter().zip(col(j)).map(|(&x, &y)| x * y).sum();
            jtj[i * p + j] = s;
            jtj[j * p + i] = s;
        }
    }
    let grad = (0..p)
        .map(|i| col(i).iter().zip(r).map(|(&x, &y)| x * y).sum())
        .collect();
    (jtj, grad)
}

fn lm_run<T: Real>(rho: &DensityMatrix<T>, opts: &SolverOptions, index: usize) -> Run<T> {
    let mut rng = restart_rng(opts.seed, index);
    let p = opts.k * PARAMS_PER_TERM;
    let mut theta: Vec<T> = (0..p)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            T::lit(0.3 * z)
        })
        .collect();
    let mut r = residual(&theta, rho);
    let mut gap = norm(&r);
    let mut history = vec![gap.as_f64()];
    let (mut jtj, mut grad) = normal_equations(&theta, &r);
    let max_diag = (0..p).map(|i| jtj[i * p + i]).fold(T::zero(), T::max);
    let mut mu = T::lit(1e-3) * max_diag.max(T::epsilon());
    let mut nu = T::lit(2.0);
    let target = T::tol(1e-14);
    let mut iterations = 0;
    while iterations < opts.max_iter && gap > target {
        iterations += 1;
        let mut damped = jtj.clone();
        for i in 0..p {
            damped[i * p + i] += mu;
        }
        let rhs: Vec<T> = grad.iter().map(|&g| -g).collect();
        let Some(h) = cholesky_solve(&damped, p, &rhs) else {
            mu *= nu;
            nu *= T::lit(2.0);
            continue;
        };
        if norm(&h) <= T::epsilon() * (norm(&theta) + T::epsilon()) {
            break;
        }
        let trial: Vec<T> = theta.iter().zip(&h).map(|(&t, &d)| t + d).collect();
        let r_trial = residual(&trial, rho);
        let gap_trial = norm(&r_trial);
        let half = T::lit(0.5);
        let predicted = half
            * h.iter()
                .zip(&grad)
                .map(|(&d, &g)| d * (mu * d - g))
                .sum::<T>();
        let actual = half * (gap * gap - gap_trial * gap_trial);
        let gain = if predicted > T::zero() {
            actual / predicted
        } else {
            -T::one()
        };
        if gain > T::zero() && gap_trial < gap {
            theta = trial;
            r = r_trial;
            gap = gap_trial;
            history.push(gap.as_f64());
            (jtj, grad) = normal_equations(&theta, &r);
            let s = T::lit(2.0) * gain - T::one();
            mu *= (T::one() / T::lit(3.0)).max(T::one() - s * s * s);
            nu = T::lit(2.0);
            let w = opts.stall_window;
            if w > 0 && history.len() > w {
                let before = history[history.len() - 1 - w];
                if before - gap.as_f64() <= 1e-6 * before {
                    break;
                }
            }
        } else {
            mu *= nu;
            nu *= T::lit(2.0);
            if !mu.is_finite() || mu > T::max_value() / T::lit(1e6) {
                break;
            }
        }
    }
    Run {
        theta,
        iterations,
        history,
    }
}

fn extract<T: Real>(theta: &[T]) -> Result<SeparableEnsemble<T>> {
    let k = theta.len() / PARAMS_PER_TERM;
    let factors: Vec<Factor<T>> = (0..k)
        .map(|i| {
            let (a, b) = term(theta, i);
            (a.to_vec(), b.to_vec())
        })
        .collect();
    SeparableEnsemble::from_factors(&factors)
}

/// Searches for a `k`-term product ensemble within `opts.tol` HS distance of `rho`.
///
/// Restarts run in parallel; the smallest gap wins, ties going to the lower
/// restart index. The reported gap is recomputed from the extracted ensemble.
pub fn certify_separable<T: Real>(
    rho: &DensityMatrix<T>,
    opts: &SolverOptions,
) -> Result<Certification<T>> {
    if rho.dims() != [QUTRIT, QUTRIT] {
        return Err(Error::BadSubsystem(format!(
            "separability solver handles 3x3 states, got dims {:?}",
            rho.dims()
        )));
    }
    if opts.k == 0 || opts.restarts == 0 {
        return Err(Error::OutOfRange(
            "solver needs k ≥ 1 and at least one restart".into(),
        ));
    }
    let runs: Vec<Run<T>> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| lm_run(rho, opts, i))
        .collect();
    let mut scored = Vec::with_capacity(runs.len());
    for run in &runs {
        let gap = match extract(&run.theta).and_then(|e| e.gap_to(rho)) {
            Ok(g) => g.as_f64(),
            Err(_) => f64::INFINITY,
        };
        scored.push(gap);
    }
    let best_restart = scored
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .expect("at least one restart");
    let best_run = &runs[best_restart];
    let best = extract(&best_run.theta)
        .and_then(|e| e.with_gap_to(rho))
        .ok();
    let report = SolverReport {
        k: opts.k,
        restarts: opts.restarts,
        tol: opts.tol,
        seed: opts.seed,
        best_gap: scored[best_restart],
        best_restart,
        iterations: best_run.iterations,
        restart_gaps: scored,
        gap_history: best_run.history.clone(),
    };
    Ok(match best {
        Some(ensemble) if report.best_gap <= opts.tol => {
            Certification::Certified { ensemble, report }
        }
        best => Certification::NoCertificate { best, report },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::rho_b;

    fn random_theta(k: usize, seed: u64) -> Vec<f64> {
        let mut rng = restart_rng(seed, 0);
        (0..k * PARAMS_PER_TERM)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect()
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let rho = rho_b(0.1f64).unwrap();
        let theta = random_theta(3, 4);
        let jac = jacobian(&theta);
        let h = 1e-6;
        let mut worst = 0.0f64;
        for p in 0..theta.len() {
            let mut plus = theta.clone();
            let mut minus = theta.clone();
            plus[p] += h;
            minus[p] -= h;
            let (rp, rm) = (residual(&plus, &rho), residual(&minus, &rho));
            for q in 0..RESIDUALS {
                let fd = (rp[q] - rm[q]) / (2.0 * h);
                worst = worst.max((fd - jac[p * RESIDUALS + q]).abs());
            }
        }
        assert!(worst < 1e-7, "max Jacobian error {worst}");
    }

    #[test]
    fn residual_norm_is_hs_gap() {
        let rho = rho_b(0.05f64).unwrap();
        let theta = random_theta(2, 1);
        let r = residual(&theta, &rho);
        let (a0, b0) = term(&theta, 0);
        let (a1, b1) = term(&theta, 1);
        let v0 = product(&a0, &b0);
        let v1 = product(&a1, &b1);
        let mut direct = 0.0;
        for i in 0..N {
            for j in 0..N {
                let s = v0[i] * v0[j].conj() + v1[i] * v1[j].conj() - rho.matrix()[(i, j)];
                direct += s.norm_sqr();
            }
        }
        assert!((norm(&r) - direct.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_certified() {
        let rho = DensityMatrix::<f64>::maximally_mixed(vec![3, 3]);
        let opts = SolverOptions {
            k: 9,
            restarts: 2,
            ..Default::default()
        };
        let out = certify_separable(&rho, &opts).unwrap();
        assert!(out.is_certified(), "gap {}", out.best_gap());
        assert!(out.best_gap() < 1e-8);
        let e = out.ensemble().unwrap();
        assert!((e.gap_to(&rho).unwrap() - out.best_gap()).abs() < 1e-12);
    }

    #[test]
    fn history_is_monotone_and_run_is_deterministic() {
        let rho = rho_b(0.03f64).unwrap();
        let opts = SolverOptions {
            restarts: 2,
            max_iter: 150,
            seed: 5,
            ..Default::default()
        };
        let a = certify_separable(&rho, &opts).unwrap();
        let b = certify_separable(&rho, &opts).unwrap();
        assert_eq!(a.report(), b.report());
        assert!(a.report().gap_history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn rejects_wrong_dims() {
        let rho = DensityMatrix::<f64>::maximally_mixed(vec![2, 2]);
        assert!(certify_separable(&rho, &SolverOptions::default()).is_err());
        let rho = DensityMatrix::<f64>::maximally_mixed(vec![3, 3]);
        let bad = SolverOptions {
            k: 0,
            ..Default::default()
        };
        assert!(certify_separable(&rho, &bad).is_err());
    }
}
