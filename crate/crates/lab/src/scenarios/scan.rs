use anyhow::Result;
use boostlab_core::analysis::{
    ppt_min_eigenvalue, realignment_sum, Classifier, Label, SeesawOptions, PPT_TOL,
};
use boostlab_core::linalg::DensityMatrix;
use boostlab_core::qudit::{simplex_state, MagicCoefficients};
use boostlab_core::relativity::{
    momentum_pair, symmetric_momentum_vector, BoostParams, TwoParticleState,
};
use boostlab_core::separability::SolverOptions;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use super::{Check, Outcome};
use crate::config::ScenarioConfig;
use crate::output::{fmt_f64, CsvTable};

pub const DEFAULT_RAPIDITY: f64 = 0.8;
pub const FILE: &str = "simplex_scan.csv";
pub const SCAN_HEADER: [&str; 15] = [
    "c00",
    "c01",
    "c02",
    "c10",
    "c11",
    "c12",
    "c20",
    "c21",
    "c22",
    "purity",
    "realign_sum_minus_1",
    "min_pt_eig",
    "label",
    "boosted_purity",
    "boosted_realign_sum_minus_1",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub coefficients: [f64; 9],
    pub purity: f64,
    pub realign_sum_minus_1: f64,
    pub min_pt_eig: f64,
    pub label: Label,
    pub witnessed: bool,
    pub boosted_purity: f64,
    pub boosted_realign_sum_minus_1: f64,
}

/// Per-state separability budget: one short restart, enough to certify
/// states near the centre of the simplex without dominating the scan.
pub fn scan_budget(cfg: &ScenarioConfig, index: usize) -> SolverOptions {
    SolverOptions {
        k: cfg.k_terms,
        restarts: 1,
        tol: cfg.tol,
        seed: cfg.seed.wrapping_add(index as u64),
        max_iter: 150,
        stall_window: 25,
    }
}

/// Uniform (Dirichlet(1, …, 1)) simplex points from normalized exponentials.
pub fn sample_coefficients(samples: usize, seed: u64) -> Vec<[f64; 9]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let e: [f64; 9] = std::array::from_fn(|_| Exp1.sample(&mut rng));
            let s: f64 = e.iter().sum();
            e.map(|v| v / s)
        })
        .collect()
}

fn boosted_marginal(
    spin: &DensityMatrix<f64>,
    b: &BoostParams<f64>,
    energy: f64,
) -> Result<DensityMatrix<f64>> {
    let mom = DensityMatrix::pure(&symmetric_momentum_vector(), vec![2, 2])?;
    let s = TwoParticleState::product(momentum_pair(energy)?, &mom, spin)?;
    Ok(s.boosted(b)?.spin_marginal())
}

pub fn compute(cfg: &ScenarioConfig) -> Result<Vec<ScanRow>> {
    let xi = cfg.rapidities_or(&[DEFAULT_RAPIDITY])[0];
    let b = BoostParams::new(cfg.unit_direction(), xi)?;
    let classifier = Classifier::<f64>::new(&SeesawOptions {
        seed: cfg.seed,
        ..SeesawOptions::default()
    })?;
    let points = sample_coefficients(cfg.samples, cfg.seed);
    points
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let spin = simplex_state(&MagicCoefficients::from_flat(c)?);
            let class = classifier.classify(&spin, &scan_budget(cfg, i))?;
            let boosted = boosted_marginal(&spin, &b, cfg.energy)?;
            let witnessed = match (class.evidence.witness_value, class.evidence.witness_window) {
                (Some(v), Some((lo, hi))) => v > hi || v < lo,
                _ => false,
            };
            Ok(ScanRow {
                coefficients: *c,
                purity: spin.purity(),
                realign_sum_minus_1: realignment_sum(&spin)? - 1.0,
                min_pt_eig: ppt_min_eigenvalue(&spin)?,
                label: class.label,
                witnessed,
                boosted_purity: boosted.purity(),
                boosted_realign_sum_minus_1: realignment_sum(&boosted)? - 1.0,
            })
        })
        .collect()
}

pub fn render(rows: &[ScanRow]) -> CsvTable {
    let mut t = CsvTable::new(SCAN_HEADER);
    for r in rows {
        let mut cells: Vec<String> = r.coefficients.iter().map(|&c| fmt_f64(c)).collect();
        cells.extend([
            fmt_f64(r.purity),
            fmt_f64(r.realign_sum_minus_1),
            fmt_f64(r.min_pt_eig),
            r.label.as_str().to_string(),
            fmt_f64(r.boosted_purity),
            fmt_f64(r.boosted_realign_sum_minus_1),
        ]);
        t.push(cells);
    }
    t
}

pub fn checks(rows: &[ScanRow], xi: f64) -> Vec<Check> {
    let n = rows.len() as f64;
    let mean = |f: fn(&ScanRow) -> f64| rows.iter().map(f).sum::<f64>() / n;
    let (before, after) = (mean(|r| r.purity), mean(|r| r.boosted_purity));
    let mut out = Vec::new();
    if xi != 0.0 {
        out.push(Check::new(
            "mean_purity_decreases",
            after < before,
            format!("mean purity {before} -> {after}"),
        ));
    }
    let broken = rows
        .iter()
        .filter(|r| match r.label {
            Label::PptEntangled => {
                r.min_pt_eig < -PPT_TOL || !(r.realign_sum_minus_1 > 0.0 || r.witnessed)
            }
            Label::Separable | Label::PptUndecided => r.min_pt_eig < -1e-8 || r.witnessed,
            Label::NptFree => r.min_pt_eig >= -1e-8,
        })
        .count();
    out.push(Check::new(
        "label_contract",
        broken == 0,
        format!("{broken} rows violate their label"),
    ));
    out
}

/// CSV over seeded uniform simplex samples: unboosted invariants and label,
/// and the boosted spin marginal of the symmetric-momentum product state.
pub fn simplex_scan(cfg: &ScenarioConfig) -> Result<Outcome<Vec<ScanRow>>> {
    let xi = cfg.rapidities_or(&[DEFAULT_RAPIDITY])[0];
    let rows = compute(cfg)?;
    let artifact = cfg.out.join(FILE);
    render(&rows).write(&artifact)?;
    let checks = checks(&rows, xi);
    Ok(Outcome {
        artifact,
        report: rows,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_seeded_simplex_points() {
        let a = sample_coefficients(50, 3);
        assert_eq!(a, sample_coefficients(50, 3));
        assert_ne!(a, sample_coefficients(50, 4));
        for c in &a {
            assert!(c.iter().all(|&v| v > 0.0));
            assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn header_matches_rendered_width() {
        let row = ScanRow {
            coefficients: [1.0 / 9.0; 9],
            purity: 1.0 / 9.0,
            realign_sum_minus_1: -2.0 / 3.0,
            min_pt_eig: 1.0 / 9.0,
            label: Label::Separable,
            witnessed: false,
            boosted_purity: 1.0 / 9.0,
            boosted_realign_sum_minus_1: -2.0 / 3.0,
        };
        let text = render(&[row]).render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].split(',').count(), SCAN_HEADER.len());
        assert_eq!(lines[1].split(',').count(), SCAN_HEADER.len());
        assert!(lines[1].contains(",SEPARABLE,"));
    }
}
