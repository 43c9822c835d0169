//! The aggregate CSV: one row per (point, realization, layer, observable).

use crate::error::LabError;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Columns of the aggregate CSV, in order.
pub const COLUMNS: [&str; 9] = ["engine", "seed", "L", "T", "p_or_nu", "realization", "layer", "observable", "value"];

/// Schema tag recorded in the manifest.
pub const SCHEMA_VERSION: &str = "iesb-csv/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub engine: String,
    /// Seed of the realization's engine run.
    pub seed: u64,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub p_or_nu: f64,
    pub realization: usize,
    /// Layers completed for circuit engines, sweeps for potts chains.
    pub layer: usize,
    pub observable: String,
    /// JSON writes non-finite values as null, read back as NaN.
    #[serde(deserialize_with = "nan_from_null")]
    pub value: f64,
}

fn nan_from_null<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

pub fn write_rows(path: &Path, rows: &[Row]) -> Result<(), LabError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    if rows.is_empty() {
        w.write_record(COLUMNS).map_err(|e| csv_error(path, e))?;
    }
    for r in rows {
        w.serialize(r).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| LabError::io(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> LabError {
    LabError::Format { path: path.to_path_buf(), reason: e.to_string() }
}

/// Reads a CSV file, or `data.csv` inside a sweep directory, checking the
/// header against [`COLUMNS`].
pub fn read_rows(path: &Path) -> Result<Vec<Row>, LabError> {
    let file: PathBuf = if path.is_dir() { path.join("data.csv") } else { path.to_path_buf() };
    let mut r = csv::Reader::from_path(&file).map_err(|e| csv_error(&file, e))?;
    let header: Vec<String> = r.headers().map_err(|e| csv_error(&file, e))?.iter().map(String::from).collect();
    if header != COLUMNS {
        return Err(LabError::Format { path: file, reason: format!("columns {header:?}, expected {COLUMNS:?}") });
    }
    r.deserialize().collect::<Result<Vec<Row>, _>>().map_err(|e| csv_error(&file, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let rows = vec![Row {
            engine: "stab".into(),
            seed: 42,
            l: 8,
            t: 16,
            p_or_nu: 0.1,
            realization: 0,
            layer: 16,
            observable: "O".into(),
            value: 3.0,
        }];
        write_rows(&path, &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().next().unwrap(), COLUMNS.join(","));
        assert_eq!(read_rows(&path).unwrap(), rows);
    }

    #[test]
    fn foreign_header_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_rows(&path), Err(LabError::Format { .. })));
    }
}
