//! Monotone cubic interpolation and curve crossings on a shared grid.

/// Piecewise cubic Hermite interpolant with Fritsch-Carlson slopes. It
/// preserves monotonicity of the data on each interval.
#[derive(Clone, Debug)]
pub struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl Pchip {
    /// `xs` must be strictly increasing with at least two points.
    pub fn new(xs: &[f64], ys: &[f64]) -> Self {
        assert_eq!(xs.len(), ys.len());
        assert!(xs.len() >= 2, "need two points");
        assert!(xs.windows(2).all(|w| w[1] > w[0]), "grid must increase");
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut m = vec![0.0; n];
        if n == 2 {
            m = vec![delta[0]; 2];
        } else {
            for i in 1..n - 1 {
                if delta[i - 1] * delta[i] > 0.0 {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Pchip { xs: xs.to_vec(), ys: ys.to_vec(), slopes: m }
    }

    /// Value at `x`, which must lie inside the grid.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        assert!(x >= self.xs[0] && x <= self.xs[n - 1], "{x} outside the grid");
        let i = match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            k => (k - 1).min(n - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let s = (x - self.xs[i]) / h;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

/// Where `a − b` changes sign on the grid, located on the monotone
/// interpolant of the difference. The first sign change in grid order is
/// used; `None` if the difference keeps one sign. Zeros that are not
/// flanked by opposite signs, such as curves meeting at an end of the
/// grid, are not crossings.
pub fn crossing(xs: &[f64], a: &[f64], b: &[f64]) -> Option<f64> {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let nonzero: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 0.0).collect();
    let k = nonzero.windows(2).position(|w| d[w[0]].signum() != d[w[1]].signum())?;
    let (i, j) = (nonzero[k], nonzero[k + 1]);
    if j > i + 1 {
        return Some(xs[i + 1]);
    }
    let f = Pchip::new(xs, &d);
    let (mut lo, mut hi) = (xs[i], xs[i + 1]);
    let up = d[i] < 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if (f.eval(mid) < 0.0) == up {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Crossings of every pair of curves, in (i, j) order with i < j.
pub fn pairwise_crossings(xs: &[f64], curves: &[Vec<f64>]) -> Vec<Option<f64>> {
    let mut out = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            out.push(crossing(xs, &curves[i], &curves[j]));
        }
    }
    out
}

/// Median; the mean of the two middle values for even lengths.
pub fn median(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    Some(if n % 2 == 1 { s[n / 2] } else { 0.5 * (s[n / 2 - 1] + s[n / 2]) })
}
