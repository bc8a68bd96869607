use rand::{rngs::StdRng, Rng, SeedableRng};

use qabacus::abacus::{
    ancilla_width, build_counter, count_phase_table, simulate_count, CountTarget,
};
use qabacus::oracle::{ref_dft_state, ref_pea_probability, ref_popcount};
use qabacus::pea::{
    analytic_distribution, build_pea, build_qft_pea, diagonal_power, identity_phase_table,
    is_zero_failure, simulate_pea, PhaseTable,
};
use qabacus::qft::build_qft;
use qabacus::{DyadicTurn, StateVector, Turn};

fn random_table(rng: &mut StdRng, n: usize, exponent: u32) -> PhaseTable {
    PhaseTable::from_dyadic(
        (0..1usize << n).map(|_| DyadicTurn::new(rng.random(), exponent).unwrap()),
    )
    .unwrap()
}

#[test]
fn diagonal_powers_compose() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..30 {
        let n = rng.random_range(0..=4);
        let exponent = rng.random_range(0..20);
        let table = random_table(&mut rng, n, exponent);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(
                    diagonal_power(&diagonal_power(&table, a), b),
                    diagonal_power(&table, a + b)
                );
            }
        }
    }
    // principal values: 2^l·φ mod 1
    let t = PhaseTable::from_dyadic([DyadicTurn::new(3, 3).unwrap()]).unwrap();
    assert_eq!(
        diagonal_power(&t, 1).phase(0).as_dyadic(),
        DyadicTurn::new(3, 2).ok()
    );
    assert!(diagonal_power(&t, 3).phase(0).is_zero());
}

#[test]
fn zero_failure_tables_read_out_deterministically() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..40 {
        let n = rng.random_range(0..=3);
        let m = rng.random_range(1..=5);
        let table = random_table(&mut rng, n, m as u32);
        assert!(is_zero_failure(&table, m));
        for j in 0..table.len() {
            let dist = simulate_pea(&table, m, j).unwrap();
            let d = table.phase(j).as_dyadic().unwrap();
            let expected = (d.numerator() << (m as u32 - d.exponent())) as usize;
            assert!((dist[expected] - 1.0).abs() < 1e-12, "n={n} m={m} j={j}");
        }
    }
    let coarse = PhaseTable::from_dyadic([DyadicTurn::new(1, 4).unwrap()]).unwrap();
    assert!(!is_zero_failure(&coarse, 3));
}

#[test]
fn real_phases_follow_the_reference_distribution() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..20 {
        let phi = rng.random::<f64>();
        let m = rng.random_range(1..=7);
        let table = PhaseTable::new(vec![Turn::real(phi).unwrap()]).unwrap();
        let sim = simulate_pea(&table, m, 0).unwrap();
        let analytic = analytic_distribution(Turn::real(phi).unwrap(), m).unwrap();
        for (j, (s, a)) in sim.iter().zip(&analytic).enumerate() {
            assert!((s - a).abs() < 1e-10);
            assert!((a - ref_pea_probability(phi, m, j as u64)).abs() < 1e-10);
        }
    }
}

#[test]
fn qft_pea_reads_every_input() {
    for n in 1..=5 {
        let c = build_qft_pea(n).unwrap();
        let ladder = c.block_gate_counts(|name| name.starts_with("U^"));
        assert_eq!(ladder.cphase, n * (n + 1) / 2);
        let ancillas: Vec<usize> = (n..2 * n).collect();
        for j in 0..1usize << n {
            let s = StateVector::new_basis_state(2 * n, j)
                .unwrap()
                .run(&c)
                .unwrap();
            assert_eq!(
                s.deterministic_register_outcome(&ancillas, 1e-12).unwrap(),
                j
            );
        }
        // the generic lowering of the same unitary gives the same state
        let generic = build_pea(&identity_phase_table(n).unwrap(), n).unwrap();
        for j in 0..1usize << n {
            let a = StateVector::new_basis_state(2 * n, j)
                .unwrap()
                .run(&c)
                .unwrap();
            let b = StateVector::new_basis_state(2 * n, j)
                .unwrap()
                .run(&generic)
                .unwrap();
            assert!(a.max_distance(&b) < 1e-12);
        }
    }
}

#[test]
fn qft_matches_dense_dft() {
    for n in 1..=8 {
        let c = build_qft(n, true).unwrap();
        for d in [0u64, 1, (1 << n) - 1, (1 << n) / 3] {
            let s = StateVector::new_basis_state(n, d as usize)
                .unwrap()
                .run(&c)
                .unwrap();
            let want = ref_dft_state(d, n).unwrap();
            assert!(s.max_distance(&want) < 1e-12, "n={n} d={d}");
        }
    }
}

// The counting circuit with the controlled powers spelled out as in the
// generic estimation layout: each U^{2^l} lowered per basis state.
#[test]
fn counter_equals_generic_estimation() {
    for n in 1..=5 {
        let m = ancilla_width(n);
        for target in [CountTarget::Ones, CountTarget::Zeros] {
            let fast = build_counter(n, target).unwrap();
            let generic = build_pea(&count_phase_table(n, target).unwrap(), m).unwrap();
            for q in 0..1usize << n {
                let a = StateVector::new_basis_state(n + m, q)
                    .unwrap()
                    .run(&fast)
                    .unwrap();
                let b = StateVector::new_basis_state(n + m, q)
                    .unwrap()
                    .run(&generic)
                    .unwrap();
                assert!(a.max_distance(&b) < 1e-12, "n={n} q={q}");
            }
        }
    }
}

#[test]
fn counting_a_superposition_gives_the_popcount_distribution() {
    let n = 4;
    let m = ancilla_width(n);
    let c = build_counter(n, CountTarget::Ones).unwrap();
    let mut state = StateVector::new_basis_state(n + m, 0).unwrap();
    for q in 0..n {
        state.apply_gate(&qabacus::Gate::H(q)).unwrap();
    }
    let out = state.run(&c).unwrap();
    let ancillas: Vec<usize> = (n..n + m).collect();
    let dist = out.marginal_distribution(&ancillas).unwrap();
    // binomial(4, k) / 16
    let expected = [1.0, 4.0, 6.0, 4.0, 1.0, 0.0, 0.0, 0.0].map(|x| x / 16.0);
    for (p, e) in dist.iter().zip(expected) {
        assert!((p - e).abs() < 1e-12);
    }
}

#[test]
fn ones_and_zeros_are_dual() {
    for n in 1..=8 {
        for q in 0..1usize << n {
            let bits: Vec<u8> = (0..n).map(|k| ((q >> k) & 1) as u8).collect();
            let (ones, _) = simulate_count(&bits, CountTarget::Ones, 1e-9).unwrap();
            let (zeros, _) = simulate_count(&bits, CountTarget::Zeros, 1e-9).unwrap();
            assert_eq!(ones, ref_popcount(&bits));
            assert_eq!(ones + zeros, n);
        }
    }
}

fn superposed(n: usize, m: usize, a: usize, b: usize) -> StateVector {
    let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); 1 << (n + m)];
    amps[a] = num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[b] = amps[a];
    StateVector::from_amplitudes(amps).unwrap()
}

#[test]
fn equal_weight_inputs_share_a_deterministic_count() {
    let (n, m) = (3, ancilla_width(3));
    let c = build_counter(n, CountTarget::Ones).unwrap();
    let ancillas: Vec<usize> = (n..n + m).collect();

    let out = superposed(n, m, 0b110, 0b011).run(&c).unwrap();
    assert_eq!(
        out.deterministic_register_outcome(&ancillas, 1e-9).unwrap(),
        2
    );
    let half = std::f64::consts::FRAC_1_SQRT_2;
    for q in [0b110usize, 0b011] {
        assert!((out.amplitude(q | 2 << n).norm() - half).abs() < 1e-12);
    }

    let out = superposed(n, m, 0b000, 0b111).run(&c).unwrap();
    assert!(out.deterministic_register_outcome(&ancillas, 1e-9).is_err());
    let dist = out.marginal_distribution(&ancillas).unwrap();
    assert!((dist[0] - 0.5).abs() < 1e-12 && (dist[3] - 0.5).abs() < 1e-12);
}

// A controlled phase is symmetric in its two qubits, so the rotations may
// equally be drawn with the ancillas as controls and the inputs as targets.
#[test]
fn rotations_may_target_the_input_side() {
    use qabacus::{Circuit, Gate};
    for n in 1..=6 {
        let m = ancilla_width(n);
        let fast = build_counter(n, CountTarget::Ones).unwrap();
        let mut flipped = Circuit::new(n + m).unwrap();
        for g in fast.gates() {
            let g = match g {
                Gate::Phase {
                    turn,
                    controls,
                    target,
                } if controls.len() == 1 && *target >= n => {
                    Gate::cphase(*turn, *target, controls[0].qubit)
                }
                other => other.clone(),
            };
            flipped.push(g).unwrap();
        }
        assert_ne!(flipped.gates(), fast.gates());
        for q in 0..1usize << n {
            let a = StateVector::new_basis_state(n + m, q)
                .unwrap()
                .run(&fast)
                .unwrap();
            let b = StateVector::new_basis_state(n + m, q)
                .unwrap()
                .run(&flipped)
                .unwrap();
            assert!(a.max_distance(&b) < 1e-12);
        }
    }
}
