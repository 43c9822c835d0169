use iesb_core::SeedPath;
use labctl::fss::{crossing_analysis, AnalysisOptions};
use labctl::stats::{ensemble_stats, GroupKey, Welford};
use labctl::{LabError, Row};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn row(l: usize, x: f64, r: usize, value: f64) -> Row {
    Row {
        engine: "synthetic".into(),
        seed: r as u64,
        l,
        t: 2 * l,
        p_or_nu: x,
        realization: r,
        layer: 2 * l,
        observable: "y".into(),
        value,
    }
}

/// Rows drawn from y = F((x − p_c) L^{a}) plus uniform noise, with F a
/// decreasing sigmoid.
fn scaling_rows(pc: f64, a: f64, noise: f64, realizations: usize, seed: u64) -> Vec<Row> {
    let mut rng = SeedPath::root(seed).rng();
    let mut rows = Vec::new();
    for l in [8usize, 16, 32] {
        for i in 0..11 {
            let x = 0.2 + 0.02 * i as f64;
            let clean = 1.0 - (1.0 + (-(x - pc) * (l as f64).powf(a)).tanh()) / 2.0 * 0.8;
            for r in 0..realizations {
                rows.push(row(l, x, r, clean + noise * (2.0 * rng.random::<f64>() - 1.0)));
            }
        }
    }
    rows
}

#[test]
fn synthetic_scaling_data_recovers_threshold_and_exponent() {
    let rows = scaling_rows(0.30, 0.75, 0.05, 40, 3);
    let opts = AnalysisOptions { seed: 9, bootstrap: 200, collapse: true, ..Default::default() };
    let fit = crossing_analysis(&rows, "y", &opts).unwrap();
    assert!((fit.p_c - 0.30).abs() < 0.01, "{fit:?}");
    assert!(fit.ci[0] <= fit.p_c && fit.p_c <= fit.ci[1]);
    let c = fit.collapse.unwrap();
    assert!((c.p_c - 0.30).abs() < 0.01, "{c:?}");
    assert!((c.inv_nu - 0.75).abs() < 0.1, "{c:?}");
    assert!(c.objective.is_finite());
    assert!(fit.xs.first().unwrap() <= &c.p_c && &c.p_c <= fit.xs.last().unwrap());
}

#[test]
fn ordered_curves_report_out_of_range() {
    let mut rows = Vec::new();
    for (k, l) in [8usize, 16, 32].into_iter().enumerate() {
        for i in 0..6 {
            for r in 0..3 {
                rows.push(row(l, 0.1 * i as f64, r, k as f64 + 0.1 * i as f64));
            }
        }
    }
    match crossing_analysis(&rows, "y", &AnalysisOptions::default()) {
        Err(LabError::NoCrossing { lo, hi, .. }) => assert_eq!((lo, hi), (0.0, 0.5)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn too_few_sizes_or_points_are_rejected() {
    let rows = scaling_rows(0.3, 0.75, 0.0, 2, 1);
    let two: Vec<Row> = rows.iter().filter(|r| r.l != 32).cloned().collect();
    assert!(matches!(crossing_analysis(&two, "y", &AnalysisOptions::default()), Err(LabError::Validation(_))));
    let few: Vec<Row> = rows.iter().filter(|r| r.p_or_nu < 0.27).cloned().collect();
    assert!(matches!(crossing_analysis(&few, "y", &AnalysisOptions::default()), Err(LabError::Validation(_))));
}

#[test]
fn row_order_does_not_change_the_fit() {
    let rows = scaling_rows(0.3, 0.75, 0.05, 10, 5);
    let opts = AnalysisOptions { seed: 2, bootstrap: 100, collapse: true, ..Default::default() };
    let a = crossing_analysis(&rows, "y", &opts).unwrap();
    let mut shuffled = rows.clone();
    shuffled.shuffle(&mut SeedPath::root(8).rng());
    let b = crossing_analysis(&shuffled, "y", &opts).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn only_the_final_layer_enters() {
    let mut rows = scaling_rows(0.3, 0.75, 0.0, 2, 1);
    let early: Vec<Row> = rows
        .iter()
        .map(|r| Row { layer: 1, value: 5.0 * r.l as f64, ..r.clone() })
        .collect();
    let base = crossing_analysis(&rows, "y", &AnalysisOptions { bootstrap: 10, ..Default::default() }).unwrap();
    rows.extend(early);
    let with_early = crossing_analysis(&rows, "y", &AnalysisOptions { bootstrap: 10, ..Default::default() }).unwrap();
    assert_eq!(base.p_c, with_early.p_c);
}

fn two_pass(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

proptest! {
    #[test]
    fn streaming_stats_match_two_pass(values in prop::collection::vec(-1e3f64..1e3, 2..60)) {
        let mut w = Welford::default();
        values.iter().for_each(|&x| w.push(x));
        let (m, se) = two_pass(&values);
        prop_assert!((w.mean - m).abs() <= 1e-9 * (1.0 + m.abs()));
        prop_assert!((w.stderr() - se).abs() <= 1e-9 * (1.0 + se));

        let rows: Vec<Row> = values.iter().enumerate().map(|(r, &v)| row(8, 0.1, r, v)).collect();
        let g = &ensemble_stats(&rows, &[GroupKey::Observable]).unwrap().groups[0];
        prop_assert_eq!(g.count, values.len());
        prop_assert!((g.mean - m).abs() <= 1e-9 * (1.0 + m.abs()));
        prop_assert!((g.stderr - se).abs() <= 1e-9 * (1.0 + se));
    }
}
