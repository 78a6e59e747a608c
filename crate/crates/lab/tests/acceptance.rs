//! Reproduction criteria. Runs as a plain binary so every criterion line is
//! printed whether it passes or not; exits nonzero on any failure not listed
//! in `KNOWN_SHORTFALLS`.

use std::time::Instant;

use boostlab::config::ScenarioConfig;
use boostlab::scenarios::{self, scan::SCAN_HEADER, Check};
use boostlab_core::analysis::{
    boost_witness, calibrate, mub_witness_spin, ppt_min_eigenvalue, rlgmt, witness_total,
};
use boostlab_core::linalg::{ComplexMatrix, DensityMatrix, C};
use boostlab_core::qudit::{rho_b, simplex_state, MagicCoefficients, PhiInterpretation};
use boostlab_core::relativity::{
    boost_matrix, build_rho0, build_rho1, momentum_index, momentum_pair, spin1_rep,
    wigner_rotation, BoostParams, FourVector, TwoParticleState,
};
use boostlab_core::separability::{certify_separable, SolverOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sub-checks allowed to fail: the seesaw maximum of the boosted spin
/// witness converges to 1.9709 from every restart, short of the reference 1.985.
const KNOWN_SHORTFALLS: &[&str] = &["spin_boosted_window_upper"];

const INSTANCES: usize = 128;

struct Criterion {
    number: u8,
    title: &'static str,
    checks: Vec<Check>,
}

impl Criterion {
    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn unexpected(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| !c.passed && !KNOWN_SHORTFALLS.contains(&c.name.as_str()))
            .collect()
    }
}

fn config(out: &std::path::Path) -> ScenarioConfig {
    ScenarioConfig {
        out: out.to_path_buf(),
        ..ScenarioConfig::default()
    }
}

fn ppt_boundary() -> Vec<Check> {
    let (mut ppt_bad, mut npt_bad) = (Vec::new(), Vec::new());
    for i in 0..=100 {
        let x = i as f64 / 300.0;
        let min = ppt_min_eigenvalue(&rho_b(x).unwrap()).unwrap();
        if x <= 2.0 / 15.0 + 1e-12 && min < -1e-10 {
            ppt_bad.push(x);
        }
        if x >= 0.14 && min > -1e-6 {
            npt_bad.push(x);
        }
    }
    vec![
        Check::new(
            "ppt_up_to_2_15",
            ppt_bad.is_empty(),
            format!("violations at {ppt_bad:?}"),
        ),
        Check::new(
            "npt_from_0_14",
            npt_bad.is_empty(),
            format!("violations at {npt_bad:?}"),
        ),
    ]
}

fn realignment(out: &std::path::Path) -> Vec<Check> {
    scenarios::realignment_curve(&config(out)).unwrap().checks
}

fn appendix(out: &std::path::Path) -> Vec<Check> {
    scenarios::verify_appendix(&config(out), None)
        .unwrap()
        .checks
}

fn solver() -> Vec<Check> {
    let opts = SolverOptions::default();
    let b = BoostParams::along_z(0.8);
    let mut checks: Vec<Check> = [1.0 / 15.0, 0.1]
        .iter()
        .map(|&x| {
            let target = boostlab_core::analysis::boosted_rho1_spin(x, &b, 1.0).unwrap();
            let r = certify_separable(&target, &opts).unwrap();
            Check::new(
                format!("certified_x_{x:.4}"),
                r.is_certified() && r.best_gap() < 1e-4,
                format!("gap {:e}", r.best_gap()),
            )
        })
        .collect();
    let r = certify_separable(&rho_b(0.2).unwrap(), &opts).unwrap();
    checks.push(Check::new(
        "rho_b_0_2_fails",
        !r.is_certified(),
        format!("best gap {:e}", r.best_gap()),
    ));
    checks
}

fn activation(out: &std::path::Path) -> Vec<Check> {
    let outcome = scenarios::activate(&config(out)).unwrap();
    let rep = &outcome.report;
    for s in &rep.comparison {
        println!(
            "    {:<22} unboosted min PT {:+.4e}, RLGMT {:.5}; boosted min PT {:+.4e}",
            s.interpretation.id(),
            s.unboosted.min_pt_eig,
            s.unboosted.rlgmt,
            s.boosted.min_pt_eig
        );
    }
    let mut checks = outcome.checks;
    let accepted = PhiInterpretation::ALL.iter().filter(|&&i| {
        let rho0 = build_rho0(0.04f64, 7.0 / 60.0, 1.0, i).unwrap();
        let spin = rho0.spin_marginal();
        let boosted = rho0
            .boosted(&BoostParams::along_z(0.95))
            .unwrap()
            .spin_marginal();
        ppt_min_eigenvalue(&spin).unwrap() >= -1e-10
            && (rlgmt(&spin).unwrap() - 0.183).abs() <= 0.01
            && ppt_min_eigenvalue(&boosted).unwrap() < -1e-4
    });
    let ids: Vec<&str> = accepted.map(|i| i.id()).collect();
    checks.push(Check::new(
        "some_interpretation_reproduces",
        !ids.is_empty(),
        format!("accepted: {ids:?}"),
    ));
    checks
}

fn witness(out: &std::path::Path) -> Vec<Check> {
    scenarios::witness_report(&config(out)).unwrap().checks
}

fn random_boost(rng: &mut ChaCha8Rng) -> BoostParams<f64> {
    loop {
        let d: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        if d.iter().map(|x| x * x).sum::<f64>() > 1e-4 {
            return BoostParams::new(d, rng.random_range(-2.5..2.5)).unwrap();
        }
    }
}

fn random_on_shell(rng: &mut ChaCha8Rng) -> FourVector<f64> {
    let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(-5.0..5.0));
    let e = (1.0 + p.iter().map(|x| x * x).sum::<f64>()).sqrt();
    FourVector::new(e, p[0], p[1], p[2])
}

fn random_simplex(rng: &mut ChaCha8Rng) -> DensityMatrix<f64> {
    let w: [f64; 9] = std::array::from_fn(|_| rng.random_range(1e-6..1.0));
    let s: f64 = w.iter().sum();
    simplex_state(&MagicCoefficients::from_flat(&w.map(|x| x / s)).unwrap())
}

fn random_amplitudes(rng: &mut ChaCha8Rng) -> [f64; 4] {
    loop {
        let a: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        if a.iter().map(|x| x * x).sum::<f64>() > 1e-3 {
            return a;
        }
    }
}

fn momentum_product(spin: &DensityMatrix<f64>, amps: [f64; 4]) -> TwoParticleState<f64> {
    let ket: Vec<C<f64>> = amps.iter().map(|&a| C::new(a, 0.0)).collect();
    let mom = DensityMatrix::pure(&ket, vec![2, 2]).unwrap();
    TwoParticleState::product(momentum_pair(1.0).unwrap(), &mom, spin).unwrap()
}

/// Simplex point pulled towards white noise until its partial transpose is positive.
fn random_ppt(rng: &mut ChaCha8Rng) -> DensityMatrix<f64> {
    let noise = DensityMatrix::maximally_mixed(vec![3, 3]);
    loop {
        let s = random_simplex(rng);
        let t: f64 = rng.random_range(0.0..1.0);
        let mut lambda = 1.0;
        for _ in 0..60 {
            let mix = DensityMatrix::mixture(&[(lambda, &s), (1.0 - lambda, &noise)]).unwrap();
            if ppt_min_eigenvalue(&mix).unwrap() >= 0.0 {
                let l = lambda * t;
                return DensityMatrix::mixture(&[(l, &s), (1.0 - l, &noise)]).unwrap();
            }
            lambda *= 0.9;
        }
    }
}

fn worst(name: &str, values: impl Iterator<Item = f64>, tol: f64, at_most: bool) -> Check {
    let v: Vec<f64> = values.collect();
    let (extreme, ok) = if at_most {
        let m = v.iter().cloned().fold(0.0, f64::max);
        (m, m <= tol)
    } else {
        let m = v.iter().cloned().fold(f64::INFINITY, f64::min);
        (m, m >= tol)
    };
    Check::new(
        name,
        ok && v.len() >= 100,
        format!("{} instances, extreme {extreme:e}, tol {tol:e}", v.len()),
    )
}

fn invariance() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rng = &mut rng;
    let w_total = witness_total(
        &mub_witness_spin::<f64>(&calibrate::<f64>(1.0).unwrap().convention).unwrap(),
    )
    .unwrap();

    let pt_identity = (0..INSTANCES).map(|_| {
        let spin = random_simplex(rng);
        let amps = random_amplitudes(rng);
        let b = random_boost(rng);
        let s = momentum_product(&spin, amps);
        let lhs = s
            .boosted(&b)
            .unwrap()
            .spin_marginal()
            .partial_transpose(1)
            .unwrap();
        let k = s.momenta();
        let d = k.map(|k| spin1_rep(&wigner_rotation(&b, &k).unwrap()).unwrap());
        let pt = spin.partial_transpose(1).unwrap();
        let norm: f64 = amps.iter().map(|a| a * a).sum();
        let mut rhs = ComplexMatrix::zeros(9, 9);
        for m in 0..2 {
            for n in 0..2 {
                let w = amps[momentum_index(m, n)].powi(2) / norm;
                rhs.add_scaled(&pt.conjugate_by(&d[m].kron(&d[n].conj())).unwrap(), w);
            }
        }
        lhs.max_abs_diff(&rhs)
    });
    let pt_identity = worst("partial_transpose_identity", pt_identity, 1e-10, true);

    let witness = (0..INSTANCES).map(|_| {
        let s = momentum_product(&random_simplex(rng), [0.0, 1.0, 1.0, 0.0]);
        let b = random_boost(rng);
        let wb = boost_witness(&w_total, s.momenta(), &b).unwrap();
        let before = s.density().expectation(&w_total).unwrap();
        let after = s.boosted(&b).unwrap().density().expectation(&wb).unwrap();
        (before - after).abs()
    });
    let witness = worst("total_witness_invariance", witness, 1e-10, true);

    let metric = worst(
        "lorentz_metric",
        (0..INSTANCES).map(|_| boost_matrix(&random_boost(rng)).metric_defect()),
        1e-12,
        true,
    );

    let wigner = (0..INSTANCES).map(|_| {
        let b = random_boost(rng);
        wigner_rotation(&b, &random_on_shell(rng))
            .unwrap()
            .rotation_defect()
    });
    let wigner = worst("wigner_special_orthogonal", wigner, 1e-8, true);

    let rho1 = build_rho1(0.1, 1.0).unwrap();
    let spectrum = (0..INSTANCES).map(|_| {
        let s1 = momentum_product(&random_simplex(rng), random_amplitudes(rng));
        let p: f64 = rng.random_range(0.0..1.0);
        let s = TwoParticleState::mixture(&[(p, &s1), (1.0 - p, &rho1)]).unwrap();
        let before = s.density().eigenvalues();
        let after = s
            .boosted(&random_boost(rng))
            .unwrap()
            .density()
            .eigenvalues();
        before
            .iter()
            .zip(&after)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    let spectrum = worst("spectrum_preserved", spectrum, 1e-10, true);

    let ppt = (0..INSTANCES).map(|_| {
        let spin = random_ppt(rng);
        let s = momentum_product(&spin, random_amplitudes(rng));
        ppt_min_eigenvalue(&s.boosted(&random_boost(rng)).unwrap().spin_marginal()).unwrap()
    });
    let ppt = worst("ppt_preserved", ppt, -1e-10, false);

    vec![pt_identity, witness, metric, wigner, spectrum, ppt]
}

fn scan(out: &std::path::Path) -> Vec<Check> {
    let cfg = ScenarioConfig {
        samples: 5000,
        rapidities: Some(vec![0.8]),
        ..config(out)
    };
    let outcome = scenarios::simplex_scan(&cfg).unwrap();
    let text = std::fs::read_to_string(&outcome.artifact).unwrap();
    let mut lines = text.lines();
    let header_ok = lines.next() == Some(SCAN_HEADER.join(",").as_str());
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let label = SCAN_HEADER.iter().position(|&h| h == "label").unwrap();
    let labels = ["NPT_FREE", "PPT_ENTANGLED", "SEPARABLE", "PPT_UNDECIDED"];
    let schema_ok = rows.len() == 5000
        && rows.iter().all(|r| {
            r.len() == SCAN_HEADER.len()
                && r.iter().enumerate().all(|(i, v)| {
                    if i == label {
                        labels.contains(v)
                    } else {
                        v.parse::<f64>().is_ok()
                    }
                })
        })
        && text.ends_with('\n')
        && !text.contains('\r');
    let mut checks = vec![Check::new(
        "schema",
        header_ok && schema_ok,
        format!("{} data rows", rows.len()),
    )];
    checks.extend(outcome.checks);
    checks
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let mut results = Vec::new();
    let mut run = |number, title, f: &dyn Fn() -> Vec<Check>| {
        let start = Instant::now();
        let c = Criterion {
            number,
            title,
            checks: f(),
        };
        println!(
            "criterion {}: {} {} ({:.1} s)",
            c.number,
            if c.passed() { "PASS" } else { "FAIL" },
            c.title,
            start.elapsed().as_secs_f64()
        );
        for check in c.checks.iter().filter(|c| !c.passed) {
            let known = KNOWN_SHORTFALLS.contains(&check.name.as_str());
            println!(
                "    failed {}{}: {}",
                check.name,
                if known { " (known)" } else { "" },
                check.detail
            );
        }
        results.push(c);
    };
    run(
        1,
        "PPT boundary of the bound-entangled family",
        &ppt_boundary,
    );
    run(2, "realignment under boosts", &|| realignment(out));
    run(3, "bundled separable decomposition", &|| appendix(out));
    run(4, "separability solver", &solver);
    run(5, "PPT activation by a boost", &|| activation(out));
    run(6, "witness values and separable windows", &|| witness(out));
    run(7, "invariance suites", &invariance);
    run(8, "simplex scan", &|| scan(out));

    let unexpected: Vec<String> = results
        .iter()
        .flat_map(|c| {
            c.unexpected()
                .into_iter()
                .map(move |k| format!("{}:{}", c.number, k.name))
        })
        .collect();
    let passed = results.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} criteria pass", results.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
