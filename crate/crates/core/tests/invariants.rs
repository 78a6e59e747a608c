use boostlab_core::analysis::{
    boost_witness, calibrate, mub_witness_spin, ppt_min_eigenvalue, witness_total,
};
use boostlab_core::linalg::{hermitian_eigenvalues, ComplexMatrix, DensityMatrix};
use boostlab_core::qudit::{simplex_state, MagicCoefficients};
use boostlab_core::relativity::*;
use proptest::prelude::*;

fn direction() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
        .prop_filter("nonzero", |d| d.iter().map(|x| x * x).sum::<f64>() > 1e-4)
}

fn boost() -> impl Strategy<Value = BoostParams<f64>> {
    (direction(), -2.5f64..2.5).prop_map(|(d, xi)| BoostParams::new(d, xi).unwrap())
}

fn on_shell() -> impl Strategy<Value = FourVector<f64>> {
    prop::array::uniform3(-5.0f64..5.0).prop_map(|p| {
        let e = (1.0 + p.iter().map(|x| x * x).sum::<f64>()).sqrt();
        FourVector::new(e, p[0], p[1], p[2])
    })
}

fn simplex_coefficients() -> impl Strategy<Value = MagicCoefficients<f64>> {
    prop::array::uniform9(1e-6f64..1.0).prop_map(|w| {
        let s: f64 = w.iter().sum();
        MagicCoefficients::from_flat(&w.map(|x| x / s)).unwrap()
    })
}

/// Bell-diagonal PPT states: mixtures of a simplex point with white noise
/// heavy enough to keep every PT eigenvalue non-negative.
fn ppt_spin_state() -> impl Strategy<Value = DensityMatrix<f64>> {
    (simplex_coefficients(), 0.0f64..1.0).prop_filter_map("PPT", |(c, t)| {
        let mut lambda = 1.0;
        let noise = DensityMatrix::maximally_mixed(vec![3, 3]);
        let s = simplex_state(&c);
        for _ in 0..60 {
            let mix = DensityMatrix::mixture(&[(lambda, &s), (1.0 - lambda, &noise)]).unwrap();
            if ppt_min_eigenvalue(&mix).unwrap() >= 0.0 {
                let l = lambda * t;
                return Some(DensityMatrix::mixture(&[(l, &s), (1.0 - l, &noise)]).unwrap());
            }
            lambda *= 0.9;
        }
        None
    })
}

fn pure_momentum_product(spin: &DensityMatrix<f64>, amps: [f64; 4]) -> TwoParticleState<f64> {
    let ket: Vec<_> = amps
        .iter()
        .map(|&a| num_complex::Complex::new(a, 0.0))
        .collect();
    let mom = DensityMatrix::pure(&ket, vec![2, 2]).unwrap();
    TwoParticleState::product(momentum_pair(1.0).unwrap(), &mom, spin).unwrap()
}

fn amplitudes() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("nonzero", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boosts_preserve_the_metric(b in boost()) {
        prop_assert!(boost_matrix(&b).metric_defect() <= 1e-12);
    }

    #[test]
    fn standard_boost_maps_rest_frame(k in on_shell()) {
        let l = standard_boost(&k).unwrap();
        let back = l.apply(&FourVector::at_rest());
        prop_assert!((back.t - k.t).abs() < 1e-12 * k.t);
        for i in 0..3 {
            prop_assert!((back.space[i] - k.space[i]).abs() < 1e-12 * k.t);
        }
        prop_assert!(l.metric_defect() < 1e-10 * k.t * k.t);
    }

    #[test]
    fn wigner_rotations_are_special_orthogonal(b in boost(), k in on_shell()) {
        let r = wigner_rotation(&b, &k).unwrap();
        prop_assert!(r.rotation_defect() <= 1e-8);
    }

    #[test]
    fn boosted_momenta_stay_on_shell(b in boost(), k in on_shell()) {
        let kb = boost_matrix(&b).apply(&k);
        prop_assert!((kb.mass_squared() - 1.0).abs() <= 1e-10 * kb.t * kb.t);
    }

    #[test]
    fn spin_representation_is_a_homomorphism(
        a1 in direction(), t1 in -3.0f64..3.0, a2 in direction(), t2 in -3.0f64..3.0
    ) {
        let r1 = Rotation::about_axis(a1, t1);
        let r2 = Rotation::about_axis(a2, t2);
        let lhs = spin1_rep(&r1.mul(&r2)).unwrap();
        let rhs = &spin1_rep(&r1).unwrap() * &spin1_rep(&r2).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
        let d = spin1_rep(&r1).unwrap();
        prop_assert!((&d * &d.dagger()).max_abs_diff(&ComplexMatrix::identity(3)) <= 1e-12);
    }

    #[test]
    fn two_particle_boost_preserves_spectrum(
        c in simplex_coefficients(), amps in amplitudes(), b in boost(), p in 0.0f64..1.0
    ) {
        let s1 = pure_momentum_product(&simplex_state(&c), amps);
        let s2 = build_rho1(0.1, 1.0).unwrap();
        let s = TwoParticleState::mixture(&[(p, &s1), (1.0 - p, &s2)]).unwrap();
        let before = s.density().eigenvalues();
        let after = s.boosted(&b).unwrap().density().eigenvalues();
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    /// `[(A⊗B) ρ (A⊗B)†]^{T_B} = (A⊗B*) ρ^{T_B} (A⊗B*)†`, summed over momentum blocks.
    #[test]
    fn partial_transpose_commutes_with_local_boost(c in simplex_coefficients(), amps in amplitudes(), b in boost()) {
        let spin = simplex_state(&c);
        let s = pure_momentum_product(&spin, amps);
        let marginal = s.boosted(&b).unwrap().spin_marginal();
        let lhs = marginal.partial_transpose(1).unwrap();

        let k = s.momenta();
        let d = [
            spin1_rep(&wigner_rotation(&b, &k[0]).unwrap()).unwrap(),
            spin1_rep(&wigner_rotation(&b, &k[1]).unwrap()).unwrap(),
        ];
        let pt = spin.partial_transpose(1).unwrap();
        let norm: f64 = amps.iter().map(|a| a * a).sum();
        let mut rhs = ComplexMatrix::zeros(9, 9);
        for m in 0..2 {
            for n in 0..2 {
                let w = amps[momentum_index(m, n)].powi(2) / norm;
                rhs.add_scaled(&pt.conjugate_by(&d[m].kron(&d[n].conj())).unwrap(), w);
            }
        }
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn ppt_survives_pure_momentum_boosts(spin in ppt_spin_state(), amps in amplitudes(), b in boost()) {
        let marginal = pure_momentum_product(&spin, amps).boosted(&b).unwrap().spin_marginal();
        prop_assert!(ppt_min_eigenvalue(&marginal).unwrap() >= -1e-10);
    }

    #[test]
    fn total_witness_pairing_is_boost_invariant(c in simplex_coefficients(), b in boost()) {
        let w = witness_total(&mub_witness_spin::<f64>(&calibrate::<f64>(1.0).unwrap().convention).unwrap()).unwrap();
        let s = pure_momentum_product(&simplex_state(&c), [0.0, 1.0, 1.0, 0.0]);
        let wb = boost_witness(&w, s.momenta(), &b).unwrap();
        let lhs = s.density().expectation(&w).unwrap();
        let rhs = s.boosted(&b).unwrap().density().expectation(&wb).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
        prop_assert!(hermitian_eigenvalues(&wb).unwrap()[0] > -1e-10);
    }
}
