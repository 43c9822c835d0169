//! One unit of work: a single realization at a single point, run on the
//! configured engine and flattened into CSV rows.

use crate::config::{Engine, Point, SweepConfig};
use crate::dataset::Row;
use crate::error::LabError;
use densequantum::{renyi_entropy, DenseExperiment, DenseState, ProbeKind, Role};
use iesb_core::seed::TAG_REALIZATION;
use iesb_core::{CircuitSpec, InitialSystem, SeedPath};
use pottsrbc::{build_lattice, Accumulator, Boundary, Chain, RbcParams};
use stabcore::{run_trajectory, Conditioning, Observable, RecordOptions, StabError};

/// Seed of realization `r` at size `l` and depth `t`. The swept p or ν does
/// not enter, so all points of a curve share their gate and probe draws.
pub fn realization_seed(master: u64, l: usize, t: usize, r: usize) -> u64 {
    SeedPath::root(master).path(&[TAG_REALIZATION, l as u64, t as u64, r as u64]).key()
}

/// Circuit spec of one unit with the given initialization.
pub fn unit_spec(cfg: &SweepConfig, pt: &Point, seed: u64, init: InitialSystem) -> CircuitSpec {
    CircuitSpec {
        l: pt.l,
        t: pt.t,
        p: pt.x,
        gate_family: cfg.circuit.gate_family,
        initial_system: init,
        apparatus_init: cfg.circuit.apparatus_init,
        env_init: cfg.circuit.env_init,
        master_seed: seed,
        partition: cfg.circuit.partition.for_size(pt.l),
    }
}

/// Short name used in unit file names and error messages.
pub fn unit_name(engine: Engine, pt: &Point, r: usize) -> String {
    format!("{}_L{}_T{}_x{}_r{}", engine.name(), pt.l, pt.t, pt.index, r)
}

pub fn run_unit(cfg: &SweepConfig, pt: &Point, r: usize) -> Result<Vec<Row>, LabError> {
    let seed = realization_seed(cfg.master_seed, pt.l, pt.t, r);
    let row = |layer: usize, observable: &str, value: f64| Row {
        engine: cfg.engine.name().to_string(),
        seed,
        l: pt.l,
        t: pt.t,
        p_or_nu: pt.x,
        realization: r,
        layer,
        observable: observable.to_string(),
        value,
    };
    let names = cfg.observable_names();
    let unit = || unit_name(cfg.engine, pt, r);
    let mut rows = Vec::new();
    match cfg.engine {
        Engine::Stab => {
            for (init, obs) in split_by_initial(&names) {
                let spec = unit_spec(cfg, pt, seed, init);
                let opts = RecordOptions { observables: obs, stride: cfg.layer_stride };
                let rec = run_trajectory(&spec, &opts).map_err(|e| stab_error(unit(), e))?;
                for s in rec.samples {
                    for v in s.values {
                        rows.push(row(s.layer, v.observable.name(), v.value as f64));
                    }
                }
            }
        }
        Engine::Dense => {
            for (init, obs) in split_by_initial(&names) {
                let spec = unit_spec(cfg, pt, seed, init);
                let err = |e: String| LabError::Engine { unit: unit(), reason: e };
                let mut exp = DenseExperiment::new(&spec, ProbeKind::NoisyTransduction).map_err(|e| err(e.to_string()))?;
                let opts = RecordOptions { observables: obs, stride: cfg.layer_stride };
                loop {
                    if opts.samples_layer(exp.layers_done, spec.t) {
                        for &o in &opts.observables {
                            let src = |sites: &[usize], c: Conditioning| dense_entropy(&exp.state, sites, c);
                            let v = o.evaluate(&src, &spec).map_err(|e| err(e.to_string()))?;
                            rows.push(row(exp.layers_done, o.name(), v));
                        }
                    }
                    if !exp.step().map_err(|e| err(e.to_string()))? {
                        break;
                    }
                }
            }
        }
        Engine::Potts => {
            let lattice = build_lattice(pt.l, pt.t, &Boundary::free(pt.l)).map_err(|e| LabError::Engine {
                unit: unit(),
                reason: e.to_string(),
            })?;
            let mut params = RbcParams::new(cfg.potts.h, pt.x, seed);
            params.sweeps = cfg.potts.sweeps;
            params.thermalization = cfg.potts.thermalization;
            let blocks = if cfg.layer_stride == 0 { 1 } else { (cfg.potts.sweeps / cfg.layer_stride).max(1) };
            let per_block = (cfg.potts.sweeps / blocks).max(1);
            let mut chain = Chain::new(lattice, params).map_err(|e| LabError::Engine { unit: unit(), reason: e.to_string() })?;
            let accs = chain.run_blocks(blocks).map_err(|e| match e {
                pottsrbc::RbcError::Invariant(m) => LabError::Invariant(format!("{}: {m}", unit())),
                e => LabError::Engine { unit: unit(), reason: e.to_string() },
            })?;
            // cumulative estimates after each block
            let mut total = Accumulator::default();
            for (k, a) in accs.iter().enumerate() {
                total.merge(a);
                for name in &names {
                    rows.push(row((k + 1) * per_block, name, potts_value(&total, name)));
                }
            }
        }
    }
    Ok(rows)
}

/// Stab and dense observables grouped by the initialization they need; O
/// runs on the pure start, C on the mixed one, the rest on the pure start.
fn split_by_initial(names: &[String]) -> Vec<(InitialSystem, Vec<Observable>)> {
    let mut pure = Vec::new();
    let mut mixed = Vec::new();
    for n in names {
        let o = Observable::from_name(n).expect("validated observable");
        match o.required_initial() {
            Some(InitialSystem::MixedViaReference) => mixed.push(o),
            _ => pure.push(o),
        }
    }
    [(InitialSystem::PureZero, pure), (InitialSystem::MixedViaReference, mixed)]
        .into_iter()
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

fn stab_error(unit: String, e: StabError) -> LabError {
    match e {
        StabError::Invariant(m) => LabError::Invariant(format!("{unit}: {m}")),
        e => LabError::Engine { unit, reason: e.to_string() },
    }
}

/// Von Neumann entropy in bits of system sites together with a register.
pub fn dense_entropy(state: &DenseState, sites: &[usize], cond: Conditioning) -> f64 {
    let reg = state.register();
    let mut q = reg.site_qubits(Role::S, sites);
    match cond {
        Conditioning::None => {}
        Conditioning::Apparatus => q.extend(reg.apparatus()),
        Conditioning::Environment => q.extend(reg.environment()),
    }
    renyi_entropy(state, &q, 1)
}

fn potts_value(acc: &Accumulator, name: &str) -> f64 {
    let n = acc.count as f64;
    match name {
        "largest_cluster" => acc.mean_largest_cluster(),
        "connectivity" => acc.connectivity(),
        "magnetization" => acc.mean_magnetization(),
        "m2" => acc.m2 / n,
        "m4" => acc.m4 / n,
        "binder" => acc.binder(),
        other => unreachable!("unvalidated potts observable {other}"),
    }
}
