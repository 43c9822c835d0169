use densequantum::{renyi_entropy, run_circuit_dense, DenseState};
use iesb_core::{ApparatusInit, CircuitSpec, EnvInit, GateFamily, InitialSystem};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = CircuitSpec> {
    (0u64..1_000_000, 0usize..4, 0.0f64..1.0, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(
        |(seed, t, p, reference, bell, haar)| {
            let mut s = CircuitSpec::clifford(2, t, p, seed);
            if reference {
                s.initial_system = InitialSystem::MixedViaReference;
            }
            if bell {
                s.apparatus_init = ApparatusInit::BellWithCopy;
                s.env_init = EnvInit::MaximallyMixed;
            }
            if haar {
                s.gate_family = GateFamily::Haar2;
            }
            s
        },
    )
}

fn run(spec: &CircuitSpec) -> Option<DenseState> {
    run_circuit_dense(spec).ok().filter(|s| s.num_qubits() <= 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_is_preserved(spec in spec_strategy()) {
        if let Some(s) = run(&spec) {
            prop_assert!((s.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn renyi_is_monotone_in_the_index(spec in spec_strategy(), mask in 1u32..u32::MAX) {
        if let Some(s) = run(&spec) {
            let region: Vec<usize> = (0..s.num_qubits()).filter(|q| mask >> q & 1 == 1).collect();
            let vals: Vec<f64> = (1..=4).map(|n| renyi_entropy(&s, &region, n)).collect();
            for w in vals.windows(2) {
                prop_assert!(w[0] >= w[1] - 1e-10);
            }
        }
    }

    #[test]
    fn pure_state_complementarity(spec in spec_strategy(), mask in 1u32..u32::MAX) {
        if let Some(s) = run(&spec) {
            let region: Vec<usize> = (0..s.num_qubits()).filter(|q| mask >> q & 1 == 1).collect();
            let rest: Vec<usize> = (0..s.num_qubits()).filter(|q| mask >> q & 1 == 0).collect();
            for n in 1..=3 {
                prop_assert!((renyi_entropy(&s, &region, n) - renyi_entropy(&s, &rest, n)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn identical_specs_give_identical_amplitudes(spec in spec_strategy()) {
        if let Some(a) = run(&spec) {
            let b = run_circuit_dense(&spec).unwrap();
            prop_assert_eq!(a.amplitudes(), b.amplitudes());
        }
    }
}
