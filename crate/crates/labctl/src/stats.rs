//! Ensemble means and standard errors over realizations.

use crate::dataset::Row;
use crate::error::LabError;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GroupKey {
    Engine,
    L,
    T,
    X,
    Layer,
    Observable,
}

impl GroupKey {
    pub const ALL: [GroupKey; 6] = [GroupKey::Engine, GroupKey::L, GroupKey::T, GroupKey::X, GroupKey::Layer, GroupKey::Observable];

    /// CSV column name.
    pub fn column(self) -> &'static str {
        match self {
            GroupKey::Engine => "engine",
            GroupKey::L => "L",
            GroupKey::T => "T",
            GroupKey::X => "p_or_nu",
            GroupKey::Layer => "layer",
            GroupKey::Observable => "observable",
        }
    }

    pub fn from_column(s: &str) -> Result<Self, LabError> {
        Self::ALL
            .into_iter()
            .find(|k| k.column() == s)
            .ok_or_else(|| LabError::Validation(format!("cannot group by `{s}`")))
    }

    fn value(self, r: &Row) -> KeyPart {
        match self {
            GroupKey::Engine => KeyPart::Text(r.engine.clone()),
            GroupKey::L => KeyPart::Int(r.l as u64),
            GroupKey::T => KeyPart::Int(r.t as u64),
            GroupKey::X => KeyPart::Real(r.p_or_nu.to_bits()),
            GroupKey::Layer => KeyPart::Int(r.layer as u64),
            GroupKey::Observable => KeyPart::Text(r.observable.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum KeyPart {
    Int(u64),
    /// Bit pattern; swept values are never negative, so bit order is
    /// numeric order.
    Real(u64),
    Text(String),
}

impl KeyPart {
    fn render(&self) -> String {
        match self {
            KeyPart::Int(v) => v.to_string(),
            KeyPart::Real(b) => f64::from_bits(*b).to_string(),
            KeyPart::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupStat {
    /// Values of the grouping columns, in groupby order.
    pub key: Vec<String>,
    pub mean: f64,
    /// Standard error of the mean over realizations; NaN for one realization.
    pub stderr: f64,
    /// Number of realizations.
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsTable {
    pub groupby: Vec<GroupKey>,
    pub groups: Vec<GroupStat>,
    pub warnings: Vec<String>,
}

/// One-pass mean and variance.
#[derive(Clone, Copy, Debug, Default)]
pub struct Welford {
    pub count: usize,
    pub mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Unbiased sample variance; NaN below two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            f64::NAN
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn stderr(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }
}

/// Groups rows by the given columns. Rows of one realization inside a group
/// (several layers, say) are averaged first, so the error is taken over
/// realizations. Non-finite values are skipped; a group left with nothing
/// is omitted and named in the warnings.
pub fn ensemble_stats(rows: &[Row], groupby: &[GroupKey]) -> Result<StatsTable, LabError> {
    if rows.is_empty() {
        return Err(LabError::Validation("empty dataset".into()));
    }
    // group -> (seed, realization) -> values; ordered maps keep sums
    // independent of row order
    let mut groups: BTreeMap<Vec<KeyPart>, BTreeMap<(u64, usize), Vec<f64>>> = BTreeMap::new();
    for r in rows {
        let key: Vec<KeyPart> = groupby.iter().map(|k| k.value(r)).collect();
        groups.entry(key).or_default().entry((r.seed, r.realization)).or_default().push(r.value);
    }
    let mut out = Vec::new();
    let mut warnings = Vec::new();
    for (key, reals) in groups {
        let mut w = Welford::default();
        for mut vals in reals.into_values() {
            vals.retain(|v| v.is_finite());
            if vals.is_empty() {
                continue;
            }
            vals.sort_by(f64::total_cmp);
            w.push(vals.iter().sum::<f64>() / vals.len() as f64);
        }
        let key: Vec<String> = key.iter().map(KeyPart::render).collect();
        if w.count == 0 {
            warnings.push(format!("group ({}) has no finite values, omitted", key.join(", ")));
            continue;
        }
        out.push(GroupStat { key, mean: w.mean, stderr: w.stderr(), count: w.count });
    }
    Ok(StatsTable { groupby: groupby.to_vec(), groups: out, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(r: usize, layer: usize, value: f64) -> Row {
        Row {
            engine: "stab".into(),
            seed: r as u64,
            l: 8,
            t: 16,
            p_or_nu: 0.2,
            realization: r,
            layer,
            observable: "O".into(),
            value,
        }
    }

    #[test]
    fn constant_column_has_zero_error() {
        let rows: Vec<Row> = (0..5).map(|r| row(r, 16, 2.0)).collect();
        let t = ensemble_stats(&rows, &[GroupKey::Observable]).unwrap();
        assert_eq!(t.groups.len(), 1);
        assert_eq!((t.groups[0].mean, t.groups[0].stderr, t.groups[0].count), (2.0, 0.0, 5));
    }

    #[test]
    fn two_values_by_hand() {
        // mean 2, sample variance 2, stderr 1
        let rows = vec![row(0, 16, 1.0), row(1, 16, 3.0)];
        let g = &ensemble_stats(&rows, &[GroupKey::L]).unwrap().groups[0];
        assert_eq!((g.mean, g.stderr, g.count), (2.0, 1.0, 2));
        assert_eq!(g.key, vec!["8"]);
    }

    #[test]
    fn errors_are_over_realizations_not_layers() {
        // realization means 1 and 3 across two layers each
        let rows = vec![row(0, 1, 0.0), row(0, 2, 2.0), row(1, 1, 3.0), row(1, 2, 3.0)];
        let g = &ensemble_stats(&rows, &[GroupKey::Observable]).unwrap().groups[0];
        assert_eq!((g.mean, g.stderr, g.count), (2.0, 1.0, 2));
    }

    #[test]
    fn single_realization_has_undefined_error() {
        let g = &ensemble_stats(&[row(0, 1, 4.0)], &[]).unwrap().groups[0];
        assert!(g.stderr.is_nan());
    }

    #[test]
    fn all_nan_group_is_omitted_with_warning() {
        let mut rows = vec![row(0, 1, 1.0)];
        let mut bad = row(1, 1, f64::NAN);
        bad.observable = "binder".into();
        rows.push(bad);
        let t = ensemble_stats(&rows, &[GroupKey::Observable]).unwrap();
        assert_eq!(t.groups.len(), 1);
        assert_eq!(t.warnings.len(), 1);
        assert!(t.warnings[0].contains("binder"));
        assert!(ensemble_stats(&[], &[]).is_err());
    }
}
