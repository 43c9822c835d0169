//! Parallel sweeps with per-unit files, resume and a deterministic merge.
//!
//! Layout of a sweep directory:
//!
//! ```text
//! config.toml      canonical form of the config
//! lock.json        config digest; a different config is refused
//! units/*.jsonl    one file per (point, realization), one row per line
//! data.csv         merged rows in point, realization order
//! manifest.json    schema, columns, code version, seeds, unit hashes
//! ```

use crate::config::SweepConfig;
use crate::dataset::{write_rows, Row, COLUMNS, SCHEMA_VERSION};
use crate::engines::{realization_seed, run_unit, unit_name};
use crate::error::LabError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable naming the root that relative output directories
/// are resolved against. Defaults to the working directory.
pub const OUTPUT_ROOT_ENV: &str = "IESB_OUTPUT_ROOT";

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Worker threads; the rayon default when absent.
    pub threads: Option<usize>,
    /// Overrides the output root from the environment.
    pub output_root: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub dir: PathBuf,
    pub computed: usize,
    pub reused: usize,
    pub rows: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct Lock {
    config_digest: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct UnitEntry {
    pub file: String,
    pub seed: u64,
    pub sha256: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: String,
    pub columns: Vec<String>,
    pub code_version: String,
    pub engine: String,
    pub config_digest: String,
    pub master_seed: u64,
    pub realizations: usize,
    pub rows: usize,
    pub units: Vec<UnitEntry>,
}

pub fn output_dir(cfg: &SweepConfig, root: Option<&Path>) -> PathBuf {
    let root = match root {
        Some(r) => r.to_path_buf(),
        None => std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")),
    };
    root.join(&cfg.output_dir)
}

struct Unit {
    name: String,
    seed: u64,
    point: crate::config::Point,
    realization: usize,
}

fn units(cfg: &SweepConfig) -> Vec<Unit> {
    let mut out = Vec::new();
    for pt in cfg.points() {
        for r in 0..cfg.realizations {
            out.push(Unit {
                name: unit_name(cfg.engine, &pt, r),
                seed: realization_seed(cfg.master_seed, pt.l, pt.t, r),
                point: pt,
                realization: r,
            });
        }
    }
    out
}

/// Writes through a temporary file and a rename, so a unit file is either
/// complete or absent.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), LabError> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| LabError::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| LabError::io(&tmp, e))?;
    f.sync_all().map_err(|e| LabError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| LabError::io(path, e))
}

fn encode_rows(rows: &[Row]) -> Vec<u8> {
    let mut out = Vec::new();
    for r in rows {
        serde_json::to_writer(&mut out, r).expect("rows serialize");
        out.push(b'\n');
    }
    out
}

fn decode_rows(path: &Path, bytes: &[u8]) -> Result<Vec<Row>, LabError> {
    let text = std::str::from_utf8(bytes).map_err(|e| LabError::Format { path: path.into(), reason: e.to_string() })?;
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line)
                .map_err(|e| LabError::Format { path: path.into(), reason: format!("line {}: {e}", i + 1) })
        })
        .collect()
}

fn check_lock(dir: &Path, digest: &str) -> Result<(), LabError> {
    let path = dir.join("lock.json");
    match fs::read(&path) {
        Ok(bytes) => {
            let lock: Lock = serde_json::from_slice(&bytes)
                .map_err(|e| LabError::Format { path: path.clone(), reason: e.to_string() })?;
            if lock.config_digest != digest {
                return Err(LabError::Validation(format!(
                    "{} holds a sweep of a different config ({} vs {digest})",
                    dir.display(),
                    lock.config_digest
                )));
            }
            Ok(())
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            let lock = Lock { config_digest: digest.to_string() };
            write_atomic(&path, &serde_json::to_vec_pretty(&lock).expect("lock serializes"))
        }
        Err(e) => Err(LabError::io(path, e)),
    }
}

/// Runs every missing unit, then merges all units into `data.csv` and
/// writes the manifest. Units already on disk are reused.
pub fn run_sweep(cfg: &SweepConfig, opts: &SweepOptions) -> Result<SweepReport, LabError> {
    cfg.validate()?;
    let dir = output_dir(cfg, opts.output_root.as_deref());
    let unit_dir = dir.join("units");
    fs::create_dir_all(&unit_dir).map_err(|e| LabError::io(&unit_dir, e))?;
    let digest = cfg.digest();
    check_lock(&dir, &digest)?;
    let cfg_path = dir.join("config.toml");
    write_atomic(&cfg_path, cfg.to_toml_string().as_bytes())?;

    let all = units(cfg);
    let todo: Vec<&Unit> = all.iter().filter(|u| !unit_dir.join(format!("{}.jsonl", u.name)).exists()).collect();
    let reused = all.len() - todo.len();

    let work = || -> Vec<Result<(), LabError>> {
        todo.par_iter()
            .map(|u| {
                let rows = run_unit(cfg, &u.point, u.realization)?;
                write_atomic(&unit_dir.join(format!("{}.jsonl", u.name)), &encode_rows(&rows))
            })
            .collect()
    };
    let results = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| LabError::Validation(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    // first failure in unit order
    results.into_iter().collect::<Result<Vec<()>, _>>()?;

    // single-threaded merge
    let mut rows = Vec::new();
    let mut entries = Vec::with_capacity(all.len());
    for u in &all {
        let file = format!("{}.jsonl", u.name);
        let path = unit_dir.join(&file);
        let bytes = fs::read(&path).map_err(|e| LabError::io(&path, e))?;
        rows.extend(decode_rows(&path, &bytes)?);
        entries.push(UnitEntry { file, seed: u.seed, sha256: hex::encode(Sha256::digest(&bytes)) });
    }
    write_rows(&dir.join("data.csv"), &rows)?;
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION.to_string(),
        columns: COLUMNS.iter().map(|c| c.to_string()).collect(),
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        engine: cfg.engine.name().to_string(),
        config_digest: digest,
        master_seed: cfg.master_seed,
        realizations: cfg.realizations,
        rows: rows.len(),
        units: entries,
    };
    write_atomic(&dir.join("manifest.json"), &serde_json::to_vec_pretty(&manifest).expect("manifest serializes"))?;
    Ok(SweepReport { dir, computed: todo.len(), reused, rows: rows.len() })
}
