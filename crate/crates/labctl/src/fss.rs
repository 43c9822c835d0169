//! Finite-size crossing analysis and data collapse.

use crate::dataset::Row;
use crate::error::LabError;
use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use iesb_core::crossing::{median, pairwise_crossings};
use iesb_core::SeedPath;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

const TAG_BOOTSTRAP: u64 = 0x626f_6f74;

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOptions {
    /// Sizes to use; every size in the dataset when absent.
    pub sizes: Option<Vec<usize>>,
    pub seed: u64,
    pub bootstrap: usize,
    pub collapse: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { sizes: None, seed: 0, bootstrap: 1000, collapse: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCrossing {
    pub l1: usize,
    pub l2: usize,
    pub x: Option<f64>,
}

/// One size's slice of the dataset that entered the fit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputRef {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub layer: usize,
    pub realizations: usize,
    /// Realizations share their draws across x and are resampled together.
    pub paired: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Collapse {
    pub p_c: f64,
    /// 1/ν in the scaling variable (x − p_c) L^{1/ν}.
    pub inv_nu: f64,
    pub objective: f64,
    pub p_c_stderr: f64,
    pub inv_nu_stderr: f64,
    pub p_c_ci: [f64; 2],
    pub inv_nu_ci: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollapseFit {
    pub observable: String,
    pub sizes: Vec<usize>,
    /// Swept values shared by every size.
    pub xs: Vec<f64>,
    pub pairwise: Vec<PairCrossing>,
    /// Median of the pairwise crossings.
    pub p_c: f64,
    /// Bootstrap standard deviation of the median.
    pub stderr: f64,
    /// 2.5 and 97.5 bootstrap percentiles.
    pub ci: [f64; 2],
    pub bootstrap: usize,
    /// Resamples in which no pair crossed.
    pub bootstrap_misses: usize,
    pub seed: u64,
    pub collapse: Option<Collapse>,
    pub inputs: Vec<InputRef>,
}

/// Final-layer values of one size: per x, values sorted by realization.
struct SizeData {
    l: usize,
    t: usize,
    layer: usize,
    per_x: Vec<Vec<f64>>,
    paired: bool,
}

impl SizeData {
    fn means(&self) -> Vec<f64> {
        self.per_x.iter().map(|v| v.iter().sum::<f64>() / v.len() as f64).collect()
    }

    fn resampled_means(&self, rng: &mut impl Rng) -> Vec<f64> {
        if self.paired {
            let n = self.per_x[0].len();
            let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            self.per_x.iter().map(|v| idx.iter().map(|&i| v[i]).sum::<f64>() / n as f64).collect()
        } else {
            self.per_x
                .iter()
                .map(|v| (0..v.len()).map(|_| v[rng.random_range(0..v.len())]).sum::<f64>() / v.len() as f64)
                .collect()
        }
    }
}

type RealKey = (u64, usize);

fn collect(rows: &[Row], observable: &str, sizes: Option<&[usize]>) -> Result<(Vec<f64>, Vec<SizeData>), LabError> {
    // L -> T -> layer -> x bits -> realization -> value
    let mut tree: BTreeMap<usize, BTreeMap<usize, BTreeMap<usize, BTreeMap<u64, BTreeMap<RealKey, f64>>>>> =
        BTreeMap::new();
    for r in rows.iter().filter(|r| r.observable == observable && r.value.is_finite()) {
        if sizes.is_some_and(|s| !s.contains(&r.l)) {
            continue;
        }
        tree.entry(r.l)
            .or_default()
            .entry(r.t)
            .or_default()
            .entry(r.layer)
            .or_default()
            .entry(r.p_or_nu.to_bits())
            .or_default()
            .insert((r.seed, r.realization), r.value);
    }
    if let Some(s) = sizes {
        if let Some(missing) = s.iter().find(|l| !tree.contains_key(l)) {
            return Err(LabError::Validation(format!("no `{observable}` rows for L = {missing}")));
        }
    }
    if tree.len() < 3 {
        return Err(LabError::Validation(format!("`{observable}` needs at least 3 sizes, found {}", tree.len())));
    }
    let mut finals = Vec::new();
    for (l, by_t) in tree {
        if by_t.len() != 1 {
            return Err(LabError::Validation(format!("L = {l} has several depths {:?}", by_t.keys().collect::<Vec<_>>())));
        }
        let (t, mut by_layer) = by_t.into_iter().next().unwrap();
        let (layer, by_x) = by_layer.pop_last().unwrap();
        finals.push((l, t, layer, by_x));
    }
    let common: BTreeSet<u64> = finals
        .iter()
        .map(|f| f.3.keys().copied().collect::<BTreeSet<u64>>())
        .reduce(|a, b| a.intersection(&b).copied().collect())
        .unwrap();
    if common.len() < 5 {
        return Err(LabError::Validation(format!("only {} swept values are shared by every size, need 5", common.len())));
    }
    let xs: Vec<f64> = common.iter().map(|&b| f64::from_bits(b)).collect();
    let data = finals
        .into_iter()
        .map(|(l, t, layer, by_x)| {
            let sets: Vec<&BTreeMap<RealKey, f64>> = common.iter().map(|b| &by_x[b]).collect();
            let paired = sets.windows(2).all(|w| w[0].keys().eq(w[1].keys()));
            SizeData { l, t, layer, per_x: sets.iter().map(|m| m.values().copied().collect()).collect(), paired }
        })
        .collect();
    Ok((xs, data))
}

fn crossing_median(xs: &[f64], curves: &[Vec<f64>]) -> Option<f64> {
    let found: Vec<f64> = pairwise_crossings(xs, curves).into_iter().flatten().collect();
    median(&found)
}

/// Linear-interpolated percentile of sorted data.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let (i, frac) = (pos.floor() as usize, pos.fract());
    if i + 1 < sorted.len() {
        sorted[i] + frac * (sorted[i + 1] - sorted[i])
    } else {
        sorted[i]
    }
}

fn spread(v: &[f64]) -> (f64, [f64; 2]) {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let m = s.iter().sum::<f64>() / n;
    let sd = if s.len() < 2 { f64::NAN } else { (s.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt() };
    (sd, [percentile(&s, 0.025), percentile(&s, 0.975)])
}

/// Locates the common crossing of the final-layer curves of `observable`
/// and optionally fits a scaling collapse. Deterministic given the rows,
/// in any order, and the seed.
pub fn crossing_analysis(rows: &[Row], observable: &str, opts: &AnalysisOptions) -> Result<CollapseFit, LabError> {
    let (xs, data) = collect(rows, observable, opts.sizes.as_deref())?;
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let curves: Vec<Vec<f64>> = data.iter().map(SizeData::means).collect();
    let raw = pairwise_crossings(&xs, &curves);
    let mut pairwise = Vec::new();
    let mut k = 0;
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            pairwise.push(PairCrossing { l1: data[i].l, l2: data[j].l, x: raw[k] });
            k += 1;
        }
    }
    let p_c = crossing_median(&xs, &curves).ok_or_else(|| LabError::NoCrossing { observable: observable.into(), lo, hi })?;
    let sizes: Vec<f64> = data.iter().map(|d| d.l as f64).collect();
    let fit = opts.collapse.then(|| fit_collapse(&xs, &sizes, &curves, p_c));

    let mut boot = Vec::with_capacity(opts.bootstrap);
    let mut boot_fits = Vec::new();
    let mut misses = 0;
    for b in 0..opts.bootstrap {
        let mut rng = SeedPath::root(opts.seed).path(&[TAG_BOOTSTRAP, b as u64]).rng();
        let resampled: Vec<Vec<f64>> = data.iter().map(|d| d.resampled_means(&mut rng)).collect();
        match crossing_median(&xs, &resampled) {
            Some(x) => boot.push(x),
            None => misses += 1,
        }
        if let Some(f) = &fit {
            boot_fits.push(fit_collapse(&xs, &sizes, &resampled, f.0));
        }
    }
    let (stderr, ci) = spread(&boot);
    let collapse = fit.map(|(pc, a, obj)| {
        let (ps, pci) = spread(&boot_fits.iter().map(|f| f.0).collect::<Vec<_>>());
        let (as_, aci) = spread(&boot_fits.iter().map(|f| f.1).collect::<Vec<_>>());
        Collapse { p_c: pc, inv_nu: a, objective: obj, p_c_stderr: ps, inv_nu_stderr: as_, p_c_ci: pci, inv_nu_ci: aci }
    });
    Ok(CollapseFit {
        observable: observable.to_string(),
        sizes: data.iter().map(|d| d.l).collect(),
        inputs: data
            .iter()
            .map(|d| InputRef { l: d.l, t: d.t, layer: d.layer, realizations: d.per_x[0].len(), paired: d.paired })
            .collect(),
        xs,
        pairwise,
        p_c,
        stderr,
        ci,
        bootstrap: opts.bootstrap,
        bootstrap_misses: misses,
        seed: opts.seed,
        collapse,
    })
}

/// Squared deviation of every point from a master curve built out of the
/// other sizes, as a function of (p_c, 1/ν).
pub struct CollapseCost<'a> {
    pub xs: &'a [f64],
    pub sizes: &'a [f64],
    pub curves: &'a [Vec<f64>],
}

const PENALTY: f64 = 1e6;

impl CollapseCost<'_> {
    pub fn objective(&self, pc: f64, a: f64) -> f64 {
        let (lo, hi) = (self.xs[0], self.xs[self.xs.len() - 1]);
        if !(lo..=hi).contains(&pc) || !(0.05..=10.0).contains(&a) {
            return PENALTY * (1.0 + (pc - pc.clamp(lo, hi)).abs() + (a - a.clamp(0.05, 10.0)).abs());
        }
        let u: Vec<Vec<f64>> = self.sizes.iter().map(|&l| self.xs.iter().map(|&x| (x - pc) * l.powf(a)).collect()).collect();
        let (mut total, mut used) = (0.0, 0usize);
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for s in 0..u.len() {
            for j in 0..self.xs.len() {
                let target = u[s][j];
                pts.clear();
                for o in (0..u.len()).filter(|&o| o != s) {
                    let k = u[o].partition_point(|&v| v < target);
                    if k == 0 || k == u[o].len() {
                        if u[o].get(k).is_some_and(|&v| v == target) {
                            pts.push((target, self.curves[o][k]));
                        }
                        continue;
                    }
                    pts.push((u[o][k - 1], self.curves[o][k - 1]));
                    pts.push((u[o][k], self.curves[o][k]));
                }
                if pts.len() < 2 {
                    continue;
                }
                let r = self.curves[s][j] - local_linear(&pts, target);
                total += r * r;
                used += 1;
            }
        }
        let possible = u.len() * self.xs.len();
        if 2 * used < possible {
            return PENALTY * (2.0 - used as f64 / possible as f64);
        }
        total / used as f64
    }
}

/// Least-squares line through the points, evaluated at `x`.
fn local_linear(pts: &[(f64, f64)], x: f64) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        my
    } else {
        my + sxy / sxx * (x - mx)
    }
}

impl CostFunction for CollapseCost<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> Result<f64, argmin::core::Error> {
        Ok(self.objective(p[0], p[1]))
    }
}

/// Best (p_c, 1/ν, objective) over a few Nelder-Mead starts.
pub fn fit_collapse(xs: &[f64], sizes: &[f64], curves: &[Vec<f64>], pc0: f64) -> (f64, f64, f64) {
    let step = 0.1 * (xs[xs.len() - 1] - xs[0]);
    let mut best = (pc0, 1.0, f64::INFINITY);
    for a0 in [0.5, 1.0, 2.0] {
        let cost = CollapseCost { xs, sizes, curves };
        let simplex = vec![vec![pc0, a0], vec![pc0 + step, a0], vec![pc0, a0 * 1.3]];
        let Ok(solver) = NelderMead::new(simplex).with_sd_tolerance(1e-12) else { continue };
        let Ok(res) = Executor::new(cost, solver).configure(|s| s.max_iters(400)).run() else { continue };
        let state = res.state();
        if let Some(p) = &state.best_param {
            if state.best_cost < best.2 {
                best = (p[0], p[1], state.best_cost);
            }
        }
    }
    best
}
