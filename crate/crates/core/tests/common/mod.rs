//! Numerical oracles shared by the integration tests. Nothing here calls the
//! library's own density code.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite Simpson rule with `m` (rounded up to even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let m = m + m % 2;
    let h = (b - a) / m as f64;
    let mut s = f(a) + f(b);
    for k in 1..m {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

pub fn normal_pdf(x: f64, mean: f64, sd: f64) -> f64 {
    let z = (x - mean) / sd;
    (-0.5 * z * z).exp() / (sd * (2.0 * PI).sqrt())
}

/// ∫ N(d | θ, σ²) (τ/2) e^{-τ|θ|} dθ, split at the kink θ = 0.
pub fn de_marginal_quadrature(d: f64, sigma: f64, tau: f64) -> f64 {
    let g = |t: f64| normal_pdf(d, t, sigma) * 0.5 * tau * (-tau * t.abs()).exp();
    let lo = d - 14.0 * sigma;
    let hi = d + 14.0 * sigma;
    let mut total = 0.0;
    if lo < 0.0 {
        total += simpson(g, lo, hi.min(0.0), 4000);
    }
    if hi > 0.0 {
        total += simpson(g, lo.max(0.0), hi, 4000);
    }
    total
}

/// Unnormalised slab posterior `N(d | θ, σ²) e^{-τ|θ|}` on a grid, with the
/// grid, its normalising constant and mean.
pub struct SlabPosterior {
    pub grid: Vec<f64>,
    pub cdf: Vec<f64>,
    pub mean: f64,
}

impl SlabPosterior {
    pub fn new(d: f64, sigma: f64, tau: f64, points: usize) -> Self {
        let lo = -d.abs() - 14.0 * sigma;
        let hi = d.abs() + 14.0 * sigma;
        let h = (hi - lo) / (points - 1) as f64;
        let grid: Vec<f64> = (0..points).map(|k| lo + k as f64 * h).collect();
        // log-scale shift keeps the density representable
        let logd: Vec<f64> = grid
            .iter()
            .map(|&t| -0.5 * ((d - t) / sigma).powi(2) - tau * t.abs())
            .collect();
        let peak = logd.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let dens: Vec<f64> = logd.iter().map(|l| (l - peak).exp()).collect();
        let mut cdf = vec![0.0; points];
        let mut first = 0.0;
        for k in 1..points {
            let area = 0.5 * h * (dens[k] + dens[k - 1]);
            cdf[k] = cdf[k - 1] + area;
            first += 0.5 * h * (dens[k] * grid[k] + dens[k - 1] * grid[k - 1]);
        }
        let z = cdf[points - 1];
        cdf.iter_mut().for_each(|c| *c /= z);
        Self { grid, cdf, mean: first / z }
    }

    /// Inverse CDF by linear interpolation.
    pub fn quantile(&self, u: f64) -> f64 {
        let k = self.cdf.partition_point(|&c| c < u).clamp(1, self.cdf.len() - 1);
        let (c0, c1) = (self.cdf[k - 1], self.cdf[k]);
        let (x0, x1) = (self.grid[k - 1], self.grid[k]);
        if c1 > c0 {
            x0 + (u - c0) / (c1 - c0) * (x1 - x0)
        } else {
            x0
        }
    }
}

/// Mean, its standard error, and sample variance.
pub fn mean_se(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt(), v)
}

/// Two-sample Kolmogorov–Smirnov statistic and asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = na * nb / (na + nb);
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    if lambda < 0.2 {
        // the series is 1 to double precision here but converges slowly
        return (d, 1.0);
    }
    let mut q = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        q += 2.0 * (-1f64).powi(k - 1) * (-2.0 * kf * kf * lambda * lambda).exp();
    }
    (d, q.clamp(0.0, 1.0))
}
