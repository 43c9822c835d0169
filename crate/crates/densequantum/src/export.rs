//! JSON views of states and replica tensors as (re, im) pairs.

use crate::replica::ReplicaTensor;
use crate::state::DenseState;
use serde_json::{json, Value};

fn pairs<'a>(it: impl Iterator<Item = &'a num_complex::Complex64>) -> Value {
    Value::Array(it.map(|z| json!([z.re, z.im])).collect())
}

pub fn state_json(state: &DenseState) -> Value {
    json!({
        "register": state.register().labels(),
        "amplitudes": pairs(state.amplitudes().iter()),
    })
}

/// Rows of the tensor, each an array of (re, im) pairs.
pub fn tensor_json(t: &ReplicaTensor) -> Value {
    let m = t.matrix();
    let rows: Vec<Value> = (0..m.nrows()).map(|r| pairs(m.row(r).iter())).collect();
    json!({
        "n": t.n,
        "copy_labels": t.labels,
        "normalized": t.normalized,
        "rows": rows,
    })
}
