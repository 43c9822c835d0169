//! JSON exports of the symmetric-group tables.

use crate::error::LabError;
use permrep::export::{w_plus_json, weingarten_json};
use permrep::weingarten::ratio_string;
use permrep::{brick_weight_table, w_plus_set, weingarten_table, BrickTable, BrickValue};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};

fn brick_json(t: &BrickTable) -> Value {
    let els = t.group().elements();
    let mut rows = Map::new();
    for (i, s) in els.iter().enumerate() {
        let mut row = Map::new();
        for (j, u) in els.iter().enumerate() {
            let v = match t.value(i, j) {
                BrickValue::Exact(r) => Value::String(ratio_string(r)),
                BrickValue::Float(f) => json!(f),
            };
            row.insert(u.cycle_string(), v);
        }
        rows.insert(s.cycle_string(), Value::Object(row));
    }
    json!({ "q": t.q, "n": t.n, "entries": rows })
}

/// Writes the Weingarten tables (d ≤ 6, up to min(d, 4) copies), the W₊ sets
/// (n ≤ 3) and the one-replica-pair brick weights, returning the files in
/// write order.
pub fn write_tables(out: &Path) -> Result<Vec<PathBuf>, LabError> {
    std::fs::create_dir_all(out).map_err(|e| LabError::io(out, e))?;
    let perm = |e: permrep::PermError| LabError::Invariant(e.to_string());
    let mut files = Vec::new();
    let mut put = |name: String, v: Value| -> Result<(), LabError> {
        let path = out.join(name);
        let mut text = serde_json::to_string_pretty(&v).expect("tables serialize");
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
        files.push(path);
        Ok(())
    };
    for d in 2..=6 {
        for m in 1..=d.min(4) as usize {
            put(format!("weingarten_d{d}_m{m}.json"), weingarten_json(&weingarten_table(d, m).map_err(perm)?))?;
        }
    }
    for n in 1..=3 {
        put(format!("w_plus_n{n}.json"), w_plus_json(&w_plus_set(n).map_err(perm)?))?;
    }
    for q in [2, 4, 8, 16, 32] {
        put(format!("brick_q{q}_n1.json"), brick_json(&brick_weight_table(q, 1).map_err(perm)?))?;
    }
    Ok(files)
}
