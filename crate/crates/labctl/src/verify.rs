//! A quick pass over the invariants and oracles of every engine.

use crate::engines::dense_entropy;
use crate::fss::{crossing_analysis, AnalysisOptions};
use crate::dataset::Row;
use densequantum::{run_circuit_dense, IeSuite, ProbeKind};
use iesb_core::{CircuitSpec, InitialSystem, SeedPath};
use num_rational::BigRational;
use pottsrbc::{build_lattice, nu_from_p_exact, Boundary, Chain, RbcParams};
use rand::Rng;
use serde::Serialize;
use stabcore::{new_experiment, Conditioning};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    match f() {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

pub fn run_verify(seed: u64) -> Vec<Check> {
    vec![
        check("weingarten_inverse", weingarten_inverse),
        check("centralizer_order", centralizer_order),
        check("w_plus_weight", w_plus_weight),
        check("stab_dense_entropies", || stab_dense_entropies(seed)),
        check("ie_exchange_symmetry", || ie_exchange(seed)),
        check("potts_exact_weight", potts_exact_weight),
        check("potts_chain_invariants", || potts_chain(seed)),
        check("synthetic_crossing", || synthetic_crossing(seed)),
    ]
}

fn weingarten_inverse() -> Result<String, String> {
    for d in 2..=6 {
        for m in 1..=d.min(4) as usize {
            let w = permrep::weingarten_table(d, m).map_err(|e| e.to_string())?;
            if !w.verify_inverse() {
                return Err(format!("Q·W differs from 1 at d = {d}, m = {m}"));
            }
        }
    }
    Ok("exact for d in 2..=6, m <= min(d, 4)".into())
}

fn centralizer_order() -> Result<String, String> {
    for n in 1..=3usize {
        let c = permrep::centralizer_of_swap(n).map_err(|e| e.to_string())?.len();
        let want = (1 << n) * (1..=n).product::<usize>();
        if c != want {
            return Err(format!("n = {n}: {c} elements, want {want}"));
        }
    }
    Ok("2^n n! for n <= 3".into())
}

fn w_plus_weight() -> Result<String, String> {
    let h = permrep::w_plus_set(2).map_err(|e| e.to_string())?.h();
    let bound = permrep::max_cycle_bound(2).map_err(|e| e.to_string())?;
    if h != 2 || bound != 3 {
        return Err(format!("h(2) = {h}, max cycles {bound}"));
    }
    Ok("h(2) = 2, max cycles 3".into())
}

fn stab_dense_entropies(seed: u64) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    let mut circuits = 0;
    for k in 0..20u64 {
        let path = SeedPath::root(seed).path(&[0x7664, k]);
        let mut rng = path.rng();
        let l = 2 * rng.random_range(1..=2usize);
        let t = rng.random_range(1..=3usize);
        let mut spec = CircuitSpec::clifford(l, t, rng.random_range(0.2..0.8), path.key());
        spec.partition = iesb_core::PartitionSpec { e_s: 1, gap: 0, p_s: l - 1, offset: 0 };
        if rng.random::<bool>() {
            spec = spec.with_initial(InitialSystem::MixedViaReference);
        }
        let mut stab = new_experiment(&spec).map_err(|e| e.to_string())?;
        stab.run().map_err(|e| e.to_string())?;
        let dense = match run_circuit_dense(&spec) {
            Ok(s) if s.num_qubits() <= 20 => s,
            _ => continue,
        };
        circuits += 1;
        for mask in 0..1usize << l {
            let sites: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).collect();
            for c in [Conditioning::None, Conditioning::Apparatus, Conditioning::Environment] {
                let d = dense_entropy(&dense, &sites, c);
                worst = worst.max((stab.entropy(&sites, c) as f64 - d).abs());
            }
        }
    }
    if circuits == 0 || worst >= 1e-9 {
        return Err(format!("{circuits} circuits, max deviation {worst:e}"));
    }
    Ok(format!("{circuits} circuits, max deviation {worst:.1e}"))
}

fn ie_exchange(seed: u64) -> Result<String, String> {
    let mut suite = IeSuite::new(ProbeKind::NoisyTransduction, seed);
    suite.realizations = 10;
    suite.qubit_budget = 12;
    let worst = suite.run().map_err(|e| e.to_string())?.iter().map(|(_, r)| r.max_deviation()).fold(0.0, f64::max);
    if worst >= 1e-9 {
        return Err(format!("max deviation {worst:e}"));
    }
    Ok(format!("10 realizations, max deviation {worst:.1e}"))
}

fn potts_exact_weight() -> Result<String, String> {
    let half = BigRational::new(1.into(), 2.into());
    let nu = nu_from_p_exact(&half, 2, 2);
    if nu != BigRational::new(2.into(), 3.into()) {
        return Err(format!("ν(1/2) = {nu}"));
    }
    Ok("ν(1/2) = 2/3 at q = 2, n = 2".into())
}

fn potts_chain(seed: u64) -> Result<String, String> {
    let lat = build_lattice(8, 8, &Boundary::free(8)).map_err(|e| e.to_string())?;
    let mut c = Chain::new(lat, RbcParams::new(2, 0.6, seed)).map_err(|e| e.to_string())?;
    for _ in 0..200 {
        c.sweep().map_err(|e| e.to_string())?;
        c.lattice.check_invariants().map_err(|e| e.to_string())?;
    }
    Ok("200 sweeps on 8×8".into())
}

fn synthetic_crossing(seed: u64) -> Result<String, String> {
    let mut rows = Vec::new();
    for l in [8usize, 16, 32] {
        for i in 0..9 {
            let x = 0.2 + 0.025 * i as f64;
            for r in 0..4 {
                rows.push(Row {
                    engine: "synthetic".into(),
                    seed: r as u64,
                    l,
                    t: 1,
                    p_or_nu: x,
                    realization: r,
                    layer: 1,
                    observable: "y".into(),
                    value: (-(x - 0.3) * (l as f64).powf(0.75)).tanh() + 1e-3 * r as f64,
                });
            }
        }
    }
    let opts = AnalysisOptions { seed, bootstrap: 50, ..Default::default() };
    let fit = crossing_analysis(&rows, "y", &opts).map_err(|e| e.to_string())?;
    if (fit.p_c - 0.3).abs() > 1e-3 {
        return Err(format!("p_c = {}", fit.p_c));
    }
    Ok(format!("p_c = {:.4}", fit.p_c))
}
