//! JSON exports keyed by canonical cycle notation.

use crate::replica::WPlus;
use crate::weingarten::{ratio_string, WeingartenTable};
use serde_json::{json, Map, Value};

pub fn weingarten_json(w: &WeingartenTable) -> Value {
    let els = w.group().elements();
    let mut rows = Map::new();
    for (i, t) in els.iter().enumerate() {
        let mut row = Map::new();
        for (j, s) in els.iter().enumerate() {
            row.insert(s.cycle_string(), Value::String(ratio_string(w.entry(i, j))));
        }
        rows.insert(t.cycle_string(), Value::Object(row));
    }
    json!({ "d": w.d, "n": w.n, "entries": rows })
}

pub fn w_plus_json(w: &WPlus) -> Value {
    let els: Vec<String> = w.elements.iter().map(|p| p.cycle_string()).collect();
    json!({ "n": w.n, "h": w.h(), "elements": els })
}
