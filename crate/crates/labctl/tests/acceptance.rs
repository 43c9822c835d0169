//! End-to-end acceptance checks. Each test prints one PASS/FAIL line; run
//! with `--nocapture` to see them.

use densequantum::gates::haar_unitary;
use densequantum::{
    apply_probe, initial_state, qubits_needed, renyi_entropy, replica_tensor, run_circuit_dense, run_circuit_with,
    CircuitClass, Conditioning, DenseState, IeSuite, Label, ProbeInit, ProbeKind,
};
use iesb_core::{ApparatusInit, CircuitSpec, EnvInit, GateFamily, InitialSystem, Schedule, SeedPath, Species};
use labctl::{crossing_analysis, read_rows, run_sweep, AnalysisOptions, Row, SweepConfig, SweepOptions};
use nalgebra::Matrix4;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use permrep::{brick_weight_table, centralizer_of_swap, max_cycle_bound, w_plus_set, weingarten_table, BrickValue};
use pottsrbc::{locate_critical, self_dual_nu, CriticalScan};
use rand::Rng;
use stabcore::new_experiment;
use std::fs;
use std::path::Path;
use std::time::Instant;

const TOL: f64 = 1e-9;

fn report(name: &str, start: Instant, lines: &[(bool, String)]) {
    let ok = lines.iter().all(|(p, _)| *p);
    let detail: Vec<&str> = lines.iter().map(|(_, d)| d.as_str()).collect();
    println!("{} {name} ({:.0} s): {}", if ok { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64(), detail.join("; "));
    for (p, d) in lines {
        if !p {
            println!("    failed: {d}");
        }
    }
    assert!(ok, "{name}");
}

#[test]
fn exact_group_and_weingarten_algebra() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let (mut inverted, mut singular) = (Vec::new(), Vec::new());
    let mut ok = true;
    for d in 2..=6u64 {
        for m in 1..=6usize {
            match weingarten_table(d, m) {
                Ok(w) => {
                    ok &= (d as usize) >= m && w.verify_inverse();
                    inverted.push(format!("({d},{m})"));
                }
                Err(permrep::PermError::Degenerate { .. }) => {
                    ok &= (d as usize) < m;
                    singular.push(format!("({d},{m})"));
                }
                Err(e) => {
                    ok = false;
                    singular.push(format!("({d},{m}) {e}"));
                }
            }
        }
    }
    lines.push((ok, format!("Q·W = 1 exactly for {} (d,m) pairs, {} singular with d < m", inverted.len(), singular.len())));

    let mut ok = true;
    for n in 1..=5usize {
        let order = (1 << n) * (1..=n).product::<usize>();
        ok &= centralizer_of_swap(n).map(|c| c.len() == order).unwrap_or(false);
        ok &= max_cycle_bound(n).map(|b| b == n + 1).unwrap_or(false);
    }
    lines.push((ok, "centralizer order 2^n n! and max cycles n+1 for n <= 5".into()));

    let h: Vec<usize> = (2..=4).map(|n| w_plus_set(n).unwrap().h()).collect();
    lines.push((h[0] == 2 && h[1] < 6 && h[2] < 24, format!("h(2), h(3), h(4) = {h:?}")));
    lines.push((start.elapsed().as_secs() < 300, "under 5 minutes".into()));
    report("group and Weingarten algebra", start, &lines);
}

#[test]
fn brick_weights_approach_the_centralizer_delta() {
    let start = Instant::now();
    let mut lines = Vec::new();
    for n in [1usize, 2] {
        let mut worst = Vec::new();
        let mut exact = true;
        for q in [2u64, 4, 8, 16, 32] {
            let t = brick_weight_table(q, n).unwrap();
            let m = t.group().order();
            let mut w = BigRational::zero();
            for i in 0..m {
                for j in 0..m {
                    match t.scaled_deviation(i, j) {
                        BrickValue::Exact(v) => w = w.max(v.abs()),
                        BrickValue::Float(_) => exact = false,
                    }
                }
            }
            worst.push(w);
        }
        let decreasing = worst.windows(2).all(|p| p[1] < p[0]);
        let tenth = BigRational::one() / BigRational::from_integer(10.into());
        let small = worst.last().unwrap() < &tenth;
        let shown: Vec<String> = worst.iter().map(|w| format!("{:.2e}", w.to_f64().unwrap_or(f64::NAN))).collect();
        lines.push((exact && decreasing && small, format!("n = {n}: max deviation {} over q = 2..32", shown.join(", "))));
    }
    lines.push((start.elapsed().as_secs() < 1800, "under 30 minutes".into()));
    report("brick-weight asymptotics", start, &lines);
}

#[test]
fn exchange_symmetry_oracles() {
    let start = Instant::now();
    let suite = IeSuite::new(ProbeKind::NoisyTransduction, 101);
    let reps = suite.run().unwrap();
    let worst = |f: fn(&densequantum::IeReport) -> f64| reps.iter().map(|(_, r)| f(r)).fold(0.0, f64::max);
    let (ex, comp) = (worst(|r| r.exchange), worst(|r| r.complement));
    let neg = worst(|r| (-r.min_conditional).max(0.0));
    let mut lines = vec![(
        reps.len() == 100 && ex < TOL && comp < TOL && neg < TOL,
        format!("{} noisy-transduction realizations: exchange {ex:.1e}, complement {comp:.1e}, negativity {neg:.1e}", reps.len()),
    )];
    let single = IeSuite::new(ProbeKind::Transduction, 102).run().unwrap();
    let broken = single.iter().filter(|(_, r)| r.exchange > 0.1).count();
    lines.push((10 * broken >= 9 * single.len(), format!("single-qubit transduction breaks it in {broken}/{}", single.len())));
    lines.push((start.elapsed().as_secs() < 600, "under 10 minutes".into()));
    report("exchange-symmetry oracles", start, &lines);
}

fn single_site_measurements(layers: usize, seed: u64) -> DenseState {
    let mut s = initial_state(1, InitialSystem::PureZero).unwrap();
    let init = ProbeInit { apparatus: ApparatusInit::PureZero, env: EnvInit::PureZero };
    for t in 0..layers {
        let u = haar_unitary(4, seed * 100 + t as u64);
        let u = Matrix4::from_fn(|i, j| u[(i, j)]);
        let (a, b) = (s.system_qubit(0, Species::A).unwrap(), s.system_qubit(0, Species::B).unwrap());
        s.apply_2q(a, b, &u);
        apply_probe(&mut s, ProbeKind::ProjectiveMeasurement, 0, init).unwrap();
    }
    s
}

fn haar_brickwork(l: usize, t: usize, p: f64, seed: u64, kind: ProbeKind) -> DenseState {
    let mut spec = CircuitSpec::clifford(l, t, p, seed);
    spec.gate_family = GateFamily::Haar2;
    run_circuit_with(&spec, kind).unwrap()
}

#[test]
fn replica_generators() {
    let start = Instant::now();
    let mut lines = Vec::new();

    let mut worst = 0.0f64;
    let mut ok = true;
    let mut checked = 0;
    for n in [2usize, 3] {
        let mut states: Vec<DenseState> = (0..3).map(|s| single_site_measurements(2, s)).collect();
        if n == 2 {
            states.extend((0..3).map(|s| haar_brickwork(2, 2, 0.5, 60 + s, ProbeKind::ProjectiveMeasurement)));
        }
        for s in &states {
            let r = replica_tensor(s, n, Conditioning::Apparatus).unwrap().generator_report();
            ok &= r.passes(CircuitClass::ApparatusEnvironmentExchange, TOL);
            worst = worst.max(r.rotation).max(r.hermitian_reflection).max(r.exchange);
            checked += 1;
        }
    }
    lines.push((ok, format!("measurement dilations, {checked} tensors at n = 2, 3: worst S/H/E residual {worst:.1e}")));

    let mut ok = true;
    let mut worst = 0.0f64;
    for seed in 0..4 {
        let s = haar_brickwork(2, 2, 0.6, 40 + seed, ProbeKind::NoisyTransduction);
        let r = replica_tensor(&s, 2, Conditioning::Apparatus).unwrap().generator_report();
        ok &= r.passes(CircuitClass::LocalUnitaryExchange, TOL);
        worst = worst.max(r.exchange_lu_both);
    }
    lines.push((ok, format!("noisy transduction n = 2, species swap on both sides: E residual {worst:.1e}")));

    let mut s = DenseState::vacuum();
    s.push_bell(Label::system(0, Species::A), Label::reference(0, Species::A)).unwrap();
    let init = ProbeInit { apparatus: ApparatusInit::BellWithCopy, env: EnvInit::PureZero };
    apply_probe(&mut s, ProbeKind::TransductionWithCopy, 0, init).unwrap();
    let t = replica_tensor(&s, 3, Conditioning::Apparatus).unwrap();
    let (plus, minus) = (t.shift_fit(1), t.shift_fit(-1));
    let which = if minus < plus { "X₋₁" } else { "X₊₁" };
    lines.push((plus.min(minus) < TOL, format!("single-qubit transduction gives Σ̃ ∝ {which} at n = 3 (fit {:.1e})", plus.min(minus))));
    lines.push((start.elapsed().as_secs() < 600, "under 10 minutes".into()));
    report("replica generators", start, &lines);
}

fn random_clifford_spec(seed: u64) -> CircuitSpec {
    let mut rng = SeedPath::root(seed).rng();
    loop {
        let l = 2 * rng.random_range(1..=4);
        let mut s = CircuitSpec::clifford(l, rng.random_range(0..=6), rng.random(), rng.random());
        if rng.random::<bool>() {
            s.initial_system = InitialSystem::MixedViaReference;
        }
        if rng.random::<bool>() {
            s.apparatus_init = ApparatusInit::BellWithCopy;
        }
        if rng.random::<bool>() {
            s.env_init = EnvInit::MaximallyMixed;
        }
        let sched = Schedule::new(&s);
        if qubits_needed(&s, &sched, ProbeKind::NoisyTransduction) <= 20 {
            return s;
        }
    }
}

#[test]
fn stabilizer_and_dense_entropies_agree() {
    let start = Instant::now();
    let (mut worst, mut regions, mut largest) = (0.0f64, 0, 0);
    let mut ok = true;
    for k in 0..1000u64 {
        let spec = random_clifford_spec(k);
        let mut stab = new_experiment(&spec).unwrap();
        stab.run().unwrap();
        let dense = run_circuit_dense(&spec).unwrap();
        let n = stab.tableau().num_qubits();
        ok &= n == dense.num_qubits();
        largest = largest.max(n);
        let mut rng = SeedPath::root(k).path(&[1]).rng();
        for _ in 0..4 {
            // the joint state is pure, so the smaller side carries the entropy
            let region: Vec<usize> = (0..n).filter(|_| rng.random::<bool>()).collect();
            let side: Vec<usize> =
                if 2 * region.len() <= n { region.clone() } else { (0..n).filter(|q| !region.contains(q)).collect() };
            let side: Vec<usize> = side.into_iter().take(8).collect();
            let s = stab.tableau().entropy_region(&side) as f64;
            let d: Vec<usize> = side.iter().map(|&q| dense.qubit(&stab.tableau().labels()[q]).unwrap()).collect();
            for order in [1, 2] {
                let dev = (renyi_entropy(&dense, &d, order) - s).abs();
                worst = worst.max(dev);
                ok &= dev < TOL;
            }
            regions += 1;
        }
    }
    let lines = [
        (ok, format!("1000 circuits up to {largest} qubits, {regions} regions: max deviation {worst:.1e}")),
        (start.elapsed().as_secs() < 900, "under 15 minutes".into()),
    ];
    report("stabilizer/dense equivalence", start, &lines);
}

#[test]
fn random_cluster_self_dual_points() {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (h, lo) in [(1u32, 0.47), (2, 0.56)] {
        let scan = CriticalScan {
            h,
            sizes: vec![16, 32, 64],
            nus: (0..7).map(|k| lo + 0.01 * k as f64).collect(),
            sweeps: 3000,
            thermalization: 300,
            blocks: 10,
            bootstrap: 100,
            seed: 77,
        };
        let e = locate_critical(&scan).unwrap();
        let oracle = self_dual_nu(h);
        lines.push((
            (e.nu_c - oracle).abs() <= 0.010,
            format!("h = {h}: ν_c = {:.4} ± {:.4} from {}, self-dual {oracle:.4}", e.nu_c, e.error, e.observable),
        ));
    }
    lines.push((start.elapsed().as_secs() < 7200, "under 2 hours".into()));
    report("random-cluster anchors", start, &lines);
}

const PHASES: &str = r#"
engine = "stab"
L = [8, 16, 32]
t_per_l = 2
p = [0.02, 0.15, 0.2, 0.25, 0.28, 0.31, 0.34, 0.37, 0.4, 0.45, 0.9]
realizations = 200
master_seed = 2025
observables = ["O", "C"]
output_dir = "phases"
[circuit]
partition = "ring"
"#;

fn mean_at(rows: &[Row], obs: &str, l: usize, p: f64) -> f64 {
    let v: Vec<f64> =
        rows.iter().filter(|r| r.observable == obs && r.l == l && r.p_or_nu == p && r.layer == r.t).map(|r| r.value).collect();
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn noisy_transduction_phase_diagram() {
    let start = Instant::now();
    let root = tempfile::tempdir().unwrap();
    let cfg = SweepConfig::from_toml_str(PHASES).unwrap();
    let rep = run_sweep(&cfg, &SweepOptions { threads: None, output_root: Some(root.path().to_path_buf()) }).unwrap();
    let rows = read_rows(&rep.dir).unwrap();
    let window: Vec<Row> = rows.iter().filter(|r| (0.1..0.5).contains(&r.p_or_nu)).cloned().collect();
    let opts = AnalysisOptions { seed: 5, ..Default::default() };
    let o = crossing_analysis(&window, "O", &opts);
    let c = crossing_analysis(&window, "C", &opts);
    let mut lines = Vec::new();

    match &o {
        Ok(f) => {
            let pairs: Vec<String> = f
                .pairwise
                .iter()
                .map(|p| format!("({},{}) {}", p.l1, p.l2, p.x.map_or("none".into(), |x| format!("{x:.3}"))))
                .collect();
            lines.push((
                f.stderr < 0.03,
                format!(
                    "O crosses at p_c = {:.4}, bootstrap spread {:.4} ({} of {} resamples without a crossing), pairs {}",
                    f.p_c,
                    f.stderr,
                    f.bootstrap_misses,
                    f.bootstrap,
                    pairs.join(" ")
                ),
            ));
        }
        Err(e) => lines.push((false, format!("O: {e}"))),
    }

    let part = labctl::config::PartitionScheme::Named(labctl::config::NamedPartition::Ring);
    for l in [8usize, 16, 32] {
        let e_qubits = 2 * part.for_size(l).e_s;
        let v = mean_at(&rows, "O", l, 0.02);
        lines.push((v >= 0.8 * 2.0 * e_qubits as f64, format!("L = {l}: O(0.02) = {v:.2} vs 2·|E_S| = {} bits", 2 * e_qubits)));
    }
    for l in [8usize, 16, 32] {
        let (ov, cv) = (mean_at(&rows, "O", l, 0.9), mean_at(&rows, "C", l, 0.9));
        lines.push((ov <= 0.5 && cv == 0.0, format!("L = {l}: O(0.9) = {ov:.2}, C after 2L layers = {cv:.2}")));
    }

    match (&o, &c) {
        (Ok(fo), Ok(fc)) => {
            let err = (fo.stderr.powi(2) + fc.stderr.powi(2)).sqrt();
            lines.push((
                (fo.p_c - fc.p_c).abs() <= 2.0 * err,
                format!("C crosses at {:.4} ± {:.4}, |Δ| = {:.4} vs 2σ = {:.4}", fc.p_c, fc.stderr, (fo.p_c - fc.p_c).abs(), 2.0 * err),
            ));
        }
        (_, Err(e)) => lines.push((false, format!("C: {e}"))),
        _ => lines.push((false, "no O crossing to compare".into())),
    }
    lines.push((start.elapsed().as_secs() < 4 * 3600, "under 4 hours".into()));
    report("noisy-transduction phase diagram", start, &lines);
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    for sub in [dir.to_path_buf(), dir.join("units")] {
        for e in fs::read_dir(&sub).unwrap() {
            let p = e.unwrap().path();
            if p.is_file() {
                files.push((p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap()));
            }
        }
    }
    files.sort();
    files
}

#[test]
fn sweeps_are_reproducible() {
    let start = Instant::now();
    let configs = [
        ("stab", "engine = \"stab\"\nL = [8, 16]\nt_per_l = 2\np = [0.1, 0.3]\nrealizations = 4\nmaster_seed = 8\nlayer_stride = 4\n"),
        ("dense", "engine = \"dense\"\nL = [2]\nT = [3]\np = [0.3, 0.6]\nrealizations = 3\nmaster_seed = 8\nlayer_stride = 1\n"),
        ("potts", "engine = \"potts\"\nL = [8]\nT = [8]\nnu = [0.4, 0.6]\nrealizations = 3\nmaster_seed = 8\nlayer_stride = 50\n[potts]\nh = 2\nsweeps = 200\nthermalization = 20\n"),
    ];
    let mut lines = Vec::new();
    for (name, text) in configs {
        let cfg = SweepConfig::from_toml_str(text).unwrap();
        let run = |threads| {
            let root = tempfile::tempdir().unwrap();
            let rep = run_sweep(&cfg, &SweepOptions { threads: Some(threads), output_root: Some(root.path().to_path_buf()) }).unwrap();
            snapshot(&rep.dir)
        };
        let a = run(1);
        let same = a == run(1);
        let threads = a == run(2);
        lines.push((same && threads, format!("{name}: {} files identical on re-run and with 2 threads", a.len())));
    }
    report("sweep determinism", start, &lines);
}
