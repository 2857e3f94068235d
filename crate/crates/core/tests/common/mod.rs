//! Test-only oracles. Nothing here goes through the library's quadrature.
#![allow(dead_code)]

use sas_privacy::stable::{density, tail_probability, EvalConfig, StableParams};
use std::f64::consts::{FRAC_PI_2, PI};

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson over `panels` equal panels of `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, tol: f64) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = lo + h;
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = h / 6.0 * (fa + 4.0 * fm + fb);
            simpson(f, lo, hi, fa, fm, fb, whole, tol / panels as f64, 50)
        })
        .sum()
}

/// Standard symmetric stable density (gamma = 1, mu = 0) for `alpha ∈ (1, 2)`, `z > 0`,
/// from Zolotarev's non-oscillatory integral
/// `f(z) = alpha z^(1/(alpha-1)) / (pi (alpha-1)) ∫₀^{π/2} V(θ) exp(-z^(alpha/(alpha-1)) V(θ)) dθ`
/// with `V(θ) = (cos θ / sin(alpha θ))^(alpha/(alpha-1)) cos((alpha-1)θ) / cos θ`.
pub fn zolotarev_density(alpha: f64, z: f64) -> f64 {
    let z = z.abs();
    let e = alpha / (alpha - 1.0);
    let ze = z.powf(e);
    // u(θ) falls monotonically from ∞ to 0; the integrand peaks where u = 1,
    // which crowds against π/2 for large z. Grade panels geometrically around it.
    let u =
        |theta: f64| ze * (theta.cos() / (alpha * theta).sin()).powf(e) * ((alpha - 1.0) * theta).cos() / theta.cos();
    let h = |theta: f64| {
        if theta <= 0.0 || theta >= FRAC_PI_2 {
            return 0.0;
        }
        let v = u(theta);
        if v > 700.0 {
            0.0
        } else {
            v * (-v).exp()
        }
    };
    let (mut lo, mut hi) = (1e-300, FRAC_PI_2 * (1.0 - 1e-16));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if u(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let peak = 0.5 * (lo + hi);
    let mut breaks = vec![0.0, peak, FRAC_PI_2];
    for j in 1..80 {
        let d = FRAC_PI_2 * 0.5f64.powi(j);
        breaks.extend([peak - d, peak + d].into_iter().filter(|t| *t > 0.0 && *t < FRAC_PI_2));
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let integral: f64 = breaks
        .windows(2)
        .map(|w| adaptive_simpson(&h, w[0], w[1], 4, 1e-17))
        .sum();
    alpha / (PI * (alpha - 1.0) * z) * integral
}

/// Composite Simpson of the library density on `[a, b]`.
pub fn integrate_density(params: &StableParams, a: f64, b: f64, panels: usize, cfg: &EvalConfig) -> f64 {
    let n = if panels % 2 == 0 { panels } else { panels + 1 };
    let h = (b - a) / n as f64;
    let mut sum = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += w * density(params, a + i as f64 * h, cfg).unwrap();
    }
    sum * h / 3.0
}

/// Two-sample Kolmogorov–Smirnov statistic and asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let en = (n * m / (n + m)).sqrt();
    (d, kolmogorov_survival((en + 0.12 + 0.11 / en) * d))
}

/// `P(K > lambda)` for the Kolmogorov distribution.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=200 {
        let kf = k as f64;
        let term = 2.0 * (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() as f64 - 1.0)
}

/// Sample mean and its standard error.
pub fn mean_and_se(v: &[f64]) -> (f64, f64) {
    (mean(v), (variance(v) / v.len() as f64).sqrt())
}

/// Least-squares slope of `ys` against `xs`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, my) = (mean(xs), mean(ys));
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Inverse-transform sampler for the standard stable law built from the
/// library density: a cumulative Simpson table on `[0, split]` and the
/// integrated tail series beyond it.
pub struct InverseCdf {
    params: StableParams,
    step: f64,
    // cdf[i] = P(0 < X <= i * step)
    cdf: Vec<f64>,
    split: f64,
    terms: usize,
}

impl InverseCdf {
    pub fn new(alpha: f64, cfg: &EvalConfig) -> Self {
        let params = StableParams::standard(alpha).unwrap();
        let split = cfg.tail_crossover;
        let step = 0.005;
        let n = (split / step).round() as usize;
        let f: Vec<f64> = (0..=2 * n)
            .map(|i| density(&params, 0.5 * step * i as f64, cfg).unwrap())
            .collect();
        let mut cdf = vec![0.0];
        for i in 0..n {
            let panel = step / 6.0 * (f[2 * i] + 4.0 * f[2 * i + 1] + f[2 * i + 2]);
            cdf.push(cdf[i] + panel);
        }
        Self {
            params,
            step,
            cdf,
            split,
            terms: cfg.series_terms,
        }
    }

    /// Gap between the table's total mass and the series tail at the split; should be ~0.
    pub fn seam_error(&self) -> f64 {
        let table = self.cdf[self.cdf.len() - 1];
        let tail = tail_probability(&self.params, self.split, self.terms).unwrap();
        table + tail - 0.5
    }

    fn upper_tail_quantile(&self, q: f64) -> f64 {
        // Solve P(X > x) = q for x > split by bisection in log x.
        let tail = |x: f64| tail_probability(&self.params, x, self.terms).unwrap();
        let (mut lo, mut hi) = (self.split.ln(), self.split.ln());
        while tail(hi.exp()) > q {
            hi += 1.0;
            if hi > 700.0 {
                return hi.exp();
            }
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if tail(mid.exp()) > q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).exp()
    }

    /// Quantile at `u ∈ (0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        let (sign, q) = if u >= 0.5 { (1.0, u - 0.5) } else { (-1.0, 0.5 - u) };
        let top = self.cdf[self.cdf.len() - 1];
        if q >= top {
            return sign * self.upper_tail_quantile(0.5 - q);
        }
        let i = self.cdf.partition_point(|&c| c <= q).max(1);
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let x0 = (i - 1) as f64 * self.step;
        sign * (x0 + self.step * (q - c0) / (c1 - c0))
    }
}
