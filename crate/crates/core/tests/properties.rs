use std::collections::BTreeSet;
use std::f64::consts::PI;

use proptest::prelude::*;

use daqc_core::daqc::{build_sdaqc_schedule, execute_schedule, solve_times};
use daqc_core::nn2ata::{
    apply_permutation_to_layout, iswap_matrix, iswap_relabel, z_string_matrix, VertexPermutation,
};
use daqc_core::noise::{monte_carlo, NoiseConfig, Protocol};
use daqc_core::perturb::Ideal;
use daqc_core::qft::{beta_state, build_dqc_circuit, exact_qft, run_circuit, zz_gate_sequence};
use daqc_core::sim::{
    evolve_ising_diagonal, expm_evolve, fidelity, matrix_of, phase_distance, DenseHamiltonian,
    DiagonalTwoQubitGate, IsingSpec, Statevector,
};
use daqc_core::C64;

fn state(n: usize) -> impl Strategy<Value = Statevector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| Statevector::normalized(v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap())
}

fn ising(n: usize) -> impl Strategy<Value = IsingSpec> {
    prop::collection::vec(-1.5f64..1.5, n * (n - 1) / 2)
        .prop_map(move |c| IsingSpec::from_vector(n, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circuits_preserve_norm(psi in state(4), use_zz in any::<bool>()) {
        let ops = build_dqc_circuit(4, use_zz).unwrap();
        let mut out = psi;
        run_circuit(&ops, &mut out, &mut Ideal).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_qft_preserves_norm(psi in state(5)) {
        prop_assert!((exact_qft(&psi).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_evolution_matches_expm(spec in ising(3), psi in state(3), t in -3.0f64..3.0) {
        let mut fast = psi.clone();
        evolve_ising_diagonal(&mut fast, &spec, t).unwrap();
        let mut dense = psi;
        expm_evolve(&mut dense, &DenseHamiltonian::from_ising(&spec), t).unwrap();
        for (a, b) in fast.amplitudes().iter().zip(dense.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(a in state(3), b in state(3)) {
        let ab = fidelity(&a, &b).unwrap();
        let ba = fidelity(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-14);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stepwise_schedule_is_exact(n in prop::sample::select(vec![2usize, 3, 5]), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let couplings = (0..n * (n - 1) / 2).map(|_| rng.random_range(-1.0..1.0)).collect();
        let target = IsingSpec::from_vector(n, couplings).unwrap();
        let schedule = build_sdaqc_schedule(&solve_times(&target).unwrap()).unwrap();
        let u = matrix_of(n, |s| execute_schedule(s, &schedule, None)).unwrap();
        let want = DenseHamiltonian::from_ising(&target).unitary(1.0);
        prop_assert!(phase_distance(&u, &want).unwrap() < 1e-9);
    }

    #[test]
    fn zz_sequence_identity(alpha in -PI..PI, swap in any::<bool>()) {
        let (c, k) = if swap { (2, 1) } else { (1, 2) };
        let seq = zz_gate_sequence(alpha, c, k).unwrap();
        let u = matrix_of(2, |s| seq.ops().iter().try_for_each(|op| op.apply(s, &mut Ideal))).unwrap();
        let want = matrix_of(2, |s| s.apply_diagonal(&DiagonalTwoQubitGate::zz(c, k, alpha).unwrap())).unwrap();
        prop_assert!(phase_distance(&u, &want).unwrap() < 1e-10);
    }

    #[test]
    fn relabel_matches_dense_conjugation(
        i in 1usize..=4, j in 1usize..=4, k in 1usize..=4, l in 1usize..=4,
    ) {
        prop_assume!(i != j && k != l);
        let support: BTreeSet<usize> = [k, l].into_iter().collect();
        let relabeled = iswap_relabel(&support, i, j).unwrap();
        let u = iswap_matrix(4, i, j).unwrap();
        let conj = &u * z_string_matrix(4, &support).unwrap() * u.adjoint();
        prop_assert!(phase_distance(&conj, &z_string_matrix(4, &relabeled).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn layouts_stay_bijective(size in 2usize..=9, swaps in prop::collection::vec((1usize..=9, 1usize..=9), 0..45)) {
        let mut layout = VertexPermutation::identity(size);
        for (i, j) in swaps {
            let (i, j) = ((i - 1) % size + 1, (j - 1) % size + 1);
            layout = apply_permutation_to_layout(&layout, i, j).unwrap();
        }
        prop_assert!(VertexPermutation::new(layout.as_slice().to_vec()).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn zero_noise_reduces_to_ideal(seed in any::<u64>(), beta in 0.0..PI) {
        let cfg = NoiseConfig { seed, ..NoiseConfig::default() }.with_error_scale(0.0);
        for p in Protocol::ALL {
            let noisy = monte_carlo(p, 3, beta, 3, &cfg).unwrap();
            let ideal = monte_carlo(p, 3, beta, 1, &NoiseConfig::ideal()).unwrap();
            prop_assert!((noisy.mean_fidelity - ideal.mean_fidelity).abs() < 1e-9);
            prop_assert_eq!(noisy.std_fidelity, 0.0);
        }
    }

    #[test]
    fn noisy_fidelity_is_a_probability(seed in any::<u64>(), beta in 0.0..PI) {
        let cfg = NoiseConfig { seed, ..NoiseConfig::default() };
        for p in Protocol::ALL {
            let r = monte_carlo(p, 3, beta, 4, &cfg).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&r.mean_fidelity));
            prop_assert!(r.std_fidelity >= 0.0);
        }
    }
}

#[test]
fn beta_family_is_normalized() {
    for n in [2, 3, 5] {
        for k in 0..=8 {
            let psi = beta_state(n, PI * k as f64 / 8.0).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-14);
        }
    }
}
