use densequantum::{renyi_entropy, run_circuit_dense, DenseState};
use iesb_core::{ApparatusInit, CircuitSpec, EnvInit, InitialSystem, SeedPath};
use rand::Rng;
use stabcore::{
    new_experiment, run_trajectory, Conditioning, EntropySource, Observable, RecordOptions, StabExperiment,
};

fn dense_region(dense: &DenseState, stab: &StabExperiment, qubits: &[usize]) -> Vec<usize> {
    qubits.iter().map(|&q| dense.qubit(&stab.tableau().labels()[q]).unwrap()).collect()
}

fn random_spec(seed: u64, max_qubits: usize) -> CircuitSpec {
    let mut rng = SeedPath::root(seed).rng();
    loop {
        let l = 2 * rng.random_range(1..=3);
        let mut s = CircuitSpec::clifford(l, rng.random_range(0..=5), rng.random(), rng.random());
        if rng.random::<bool>() {
            s.initial_system = InitialSystem::MixedViaReference;
        }
        if rng.random::<bool>() {
            s.apparatus_init = ApparatusInit::BellWithCopy;
        }
        if rng.random::<bool>() {
            s.env_init = EnvInit::MaximallyMixed;
        }
        let sched = iesb_core::Schedule::new(&s);
        if densequantum::qubits_needed(&s, &sched, densequantum::ProbeKind::NoisyTransduction) <= max_qubits {
            return s;
        }
    }
}

#[test]
fn random_circuits_agree_with_dense_entropies() {
    for k in 0..60 {
        let spec = random_spec(k, 16);
        let mut stab = new_experiment(&spec).unwrap();
        stab.run().unwrap();
        let dense = run_circuit_dense(&spec).unwrap();
        let n = stab.tableau().num_qubits();
        assert_eq!(n, dense.num_qubits());
        let mut rng = SeedPath::root(1000 + k).rng();
        for _ in 0..6 {
            let region: Vec<usize> = (0..n).filter(|_| rng.random::<bool>()).collect();
            let s = stab.tableau().entropy_region(&region) as f64;
            let d = dense_region(&dense, &stab, &region);
            for order in [1, 2, 3] {
                assert!((renyi_entropy(&dense, &d, order) - s).abs() < 1e-9, "spec {k} region {region:?}");
            }
        }
    }
}

#[test]
fn shared_schedule_gives_the_same_record() {
    // An L = 8 chain with few probes keeps the dense register within 20 qubits.
    let mut found = 0;
    for seed in 0..400 {
        let spec = CircuitSpec::clifford(8, 3, 0.05, seed);
        let sched = iesb_core::Schedule::new(&spec);
        if sched.probe_count() == 0 || sched.probe_count() > 2 {
            continue;
        }
        let opts = RecordOptions::for_spec(&spec);
        let rec = run_trajectory(&spec, &opts).unwrap();
        let stab = {
            let mut e = new_experiment(&spec).unwrap();
            e.run().unwrap();
            e
        };
        let dense = run_circuit_dense(&spec).unwrap();
        let src = |sites: &[usize], c: Conditioning| {
            let q = stab.region_qubits(sites, c);
            renyi_entropy(&dense, &dense_region(&dense, &stab, &q), 1)
        };
        for &o in &opts.observables {
            let d = o.evaluate(&src, &spec).unwrap();
            let s = rec.value(spec.t, o).unwrap() as f64;
            assert!((d - s).abs() < 1e-9, "{o:?}: dense {d} stab {s}");
            assert!((stab.entropy_bits(&[], Conditioning::Apparatus) - src(&[], Conditioning::Apparatus)).abs() < 1e-9);
        }
        found += 1;
        if found == 3 {
            break;
        }
    }
    assert_eq!(found, 3);
    let _ = Observable::ALL;
}
