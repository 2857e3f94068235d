//! Symmetric alpha-stable densities.
//!
//! The density with stability `alpha`, scale `gamma` and location `mu` is the
//! Fourier inversion of `exp(i t mu - |gamma t|^alpha)`. Only `alpha = 1`
//! (Cauchy) and `alpha = 2` (Gaussian with variance `2 gamma^2`) have closed
//! forms. Everything else is evaluated in the standardized variable
//! `z = |x - mu| / gamma`:
//!
//! * `z < tail_crossover`: the cosine integral `(1/pi) ∫₀^∞ exp(-t^alpha) cos(t z) dt`,
//!   split at the zeros of `cos(t z)` so each piece is a smooth, one-signed
//!   integral and the whole becomes an alternating sum;
//! * `z >= tail_crossover`: the asymptotic tail expansion
//!   `(1/pi) Σ (-1)^(k+1) Γ(alpha k + 1)/k! · sin(k alpha pi/2) · z^-(alpha k + 1)`.
//!
//! The density is symmetric, so only `z >= 0` is ever evaluated.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::quadrature;
use crate::special::{gamma, ln_gamma};

/// Distance from 1 or 2 within which `alpha` is snapped onto the closed forms.
pub const ALPHA_SNAP: f64 = 1e-12;

/// Below this `z` the integrand barely oscillates and is integrated in one pass.
const SLOW_OSCILLATION: f64 = 0.1;

/// `exp(-t^alpha)` is dropped once `t^alpha` exceeds this (e^-50 ≈ 2e-22).
const ENVELOPE_CUTOFF: f64 = 50.0;

const SEGMENTS_PER_PIECE: usize = 200;

/// Parameters `(alpha, gamma, mu)` of a symmetric stable law. Skewness is always zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    alpha: f64,
    gamma: f64,
    mu: f64,
}

impl StableParams {
    /// Validates `alpha ∈ [1, 2]`, `gamma > 0` and a finite `mu`.
    pub fn new(alpha: f64, gamma: f64, mu: f64) -> Result<Self> {
        ensure(
            alpha.is_finite() && (1.0 - ALPHA_SNAP..=2.0 + ALPHA_SNAP).contains(&alpha),
            || format!("alpha must lie in [1, 2], got {alpha}"),
        )?;
        ensure(gamma.is_finite() && gamma > 0.0, || {
            format!("gamma must be positive, got {gamma}")
        })?;
        ensure(mu.is_finite(), || format!("mu must be finite, got {mu}"))?;
        let alpha = if (alpha - 1.0).abs() <= ALPHA_SNAP {
            1.0
        } else if (alpha - 2.0).abs() <= ALPHA_SNAP {
            2.0
        } else {
            alpha
        };
        Ok(Self { alpha, gamma, mu })
    }

    /// Unit scale, zero location.
    pub fn standard(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn with_mu(self, mu: f64) -> Result<Self> {
        Self::new(self.alpha, self.gamma, mu)
    }

    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Self::new(self.alpha, gamma, self.mu)
    }

    pub fn is_cauchy(&self) -> bool {
        self.alpha == 1.0
    }

    pub fn is_gaussian(&self) -> bool {
        self.alpha == 2.0
    }

    fn standardize(&self, x: f64) -> f64 {
        ((x - self.mu) / self.gamma).abs()
    }
}

/// Numerical settings for density evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub quad_rel_tol: f64,
    pub quad_abs_tol: f64,
    /// Standardized distance `|x - mu| / gamma` at and beyond which the tail series is used.
    pub tail_crossover: f64,
    /// Maximum number of tail-series terms.
    pub series_terms: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            quad_rel_tol: 1e-9,
            quad_abs_tol: 1e-12,
            tail_crossover: 20.0,
            series_terms: 10,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        ensure(self.quad_rel_tol > 0.0 && self.quad_rel_tol.is_finite(), || {
            format!("quad_rel_tol must be positive, got {}", self.quad_rel_tol)
        })?;
        ensure(self.quad_abs_tol > 0.0 && self.quad_abs_tol.is_finite(), || {
            format!("quad_abs_tol must be positive, got {}", self.quad_abs_tol)
        })?;
        ensure(self.tail_crossover > 1.0, || {
            format!("tail_crossover must exceed 1, got {}", self.tail_crossover)
        })?;
        ensure((1..=10).contains(&self.series_terms), || {
            format!("series_terms must be in 1..=10, got {}", self.series_terms)
        })
    }
}

/// Characteristic function `exp(i t mu - |gamma t|^alpha)`.
pub fn characteristic(params: &StableParams, t: f64) -> Complex64 {
    let modulus = (-(params.gamma * t).abs().powf(params.alpha)).exp();
    Complex64::from_polar(modulus, t * params.mu)
}

/// Density at `x`.
pub fn density(params: &StableParams, x: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.validate()?;
    let z = params.standardize(x);
    Ok(standard_density(params.alpha, z, cfg)? / params.gamma)
}

/// Natural log of the density. Exact for `alpha = 2` even where the density underflows.
pub fn log_density(params: &StableParams, x: f64, cfg: &EvalConfig) -> Result<f64> {
    if params.is_gaussian() {
        let z = params.standardize(x);
        return Ok(-0.25 * z * z - (2.0 * PI.sqrt() * params.gamma).ln());
    }
    density(params, x, cfg).map(f64::ln)
}

/// Density computed by the cosine integral regardless of `alpha` or distance from the mode.
///
/// Exists to cross-check the closed forms and the tail series.
pub fn density_quadrature(params: &StableParams, x: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.validate()?;
    let z = params.standardize(x);
    Ok(cosine_integral(params.alpha, z, cfg)? / params.gamma)
}

fn standard_density(alpha: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    if alpha == 1.0 {
        Ok(1.0 / (PI * (1.0 + z * z)))
    } else if alpha == 2.0 {
        Ok((-0.25 * z * z).exp() / (2.0 * PI.sqrt()))
    } else if z >= cfg.tail_crossover {
        Ok(asymptotic_tail(alpha, z, cfg.series_terms))
    } else {
        cosine_integral(alpha, z, cfg)
    }
}

fn cosine_integral(alpha: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    let t_max = ENVELOPE_CUTOFF.powf(1.0 / alpha);
    let integrand = |t: f64| (-t.powf(alpha)).exp() * (t * z).cos();
    let piece_abs = cfg.quad_abs_tol * 1e-3;
    let piece_rel = cfg.quad_rel_tol.min(1e-6) * 1e-3;

    let mut breaks = vec![0.0];
    if z < SLOW_OSCILLATION {
        breaks.push(1.0_f64.min(t_max));
    } else {
        // Zeros of cos(t z).
        let mut k = 0.0;
        loop {
            let t = (k + 0.5) * PI / z;
            if t >= t_max {
                break;
            }
            breaks.push(t);
            k += 1.0;
        }
    }
    breaks.push(t_max);

    let mut value = 0.0;
    let mut error = 0.0;
    let mut abs_value = 0.0;
    for w in breaks.windows(2) {
        let est = quadrature::integrate(&integrand, w[0], w[1], piece_abs, piece_rel, SEGMENTS_PER_PIECE);
        if !est.converged {
            return Err(Error::QuadratureNotConverged {
                error: est.error,
                tolerance: piece_abs.max(piece_rel * est.value.abs()),
            });
        }
        value += est.value;
        error += est.error;
        abs_value += est.abs_value;
    }
    let tolerance = cfg
        .quad_abs_tol
        .max(cfg.quad_rel_tol * value.abs())
        .max(50.0 * f64::EPSILON * abs_value);
    if error > tolerance {
        return Err(Error::QuadratureNotConverged { error, tolerance });
    }
    Ok(value / PI)
}

/// `sin(pi v)`, exact at integer and half-integer `v`.
fn sin_pi(v: f64) -> f64 {
    let r = v.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else if r == 1.5 {
        -1.0
    } else {
        (PI * r).sin()
    }
}

/// Magnitude and sign of the k-th tail term in the standardized variable.
fn tail_term(alpha: f64, z: f64, k: usize) -> (f64, f64) {
    let kf = k as f64;
    let ak = alpha * kf;
    let log_mag = ln_gamma(ak + 1.0) - ln_gamma(kf + 1.0) - (ak + 1.0) * z.ln();
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    (log_mag.exp(), sign * sin_pi(0.5 * ak))
}

/// Tail series truncated at `n_max` terms or just before the terms start to grow.
fn asymptotic_tail(alpha: f64, z: f64, n_max: usize) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..=n_max {
        let (mag, factor) = tail_term(alpha, z, k);
        if mag > prev {
            break;
        }
        sum += mag * factor;
        prev = mag;
    }
    sum / PI
}

/// The first `n` terms of the large-`|x|` tail expansion, in original units.
///
/// Requires `|x - mu| / gamma > 1`; the series is asymptotic and meaningless near the mode.
pub fn tail_series(params: &StableParams, x: f64, n: usize) -> Result<f64> {
    ensure(n >= 1, || "tail series needs at least one term".into())?;
    let z = params.standardize(x);
    ensure(z > 1.0, || format!("tail series needs |x - mu|/gamma > 1, got {z}"))?;
    let sum: f64 = (1..=n)
        .map(|k| {
            let (mag, factor) = tail_term(params.alpha, z, k);
            mag * factor
        })
        .sum();
    Ok(sum / PI / params.gamma)
}

/// Probability mass beyond `x` on the far side from the mode, `P(|X - mu| > |x - mu|) / 2`,
/// from the termwise-integrated tail series (`n` terms). Exact for `alpha = 1`.
pub fn tail_probability(params: &StableParams, x: f64, n: usize) -> Result<f64> {
    let z = params.standardize(x);
    ensure(z > 1.0, || {
        format!("tail probability needs |x - mu|/gamma > 1, got {z}")
    })?;
    if params.is_cauchy() {
        return Ok(0.5 - z.atan() / PI);
    }
    if params.is_gaussian() {
        let f = |s: f64| (-0.25 * s * s).exp() / (2.0 * PI.sqrt());
        let est = quadrature::integrate(&f, z, z + 60.0, 1e-300, 1e-13, 500);
        return Ok(est.value);
    }
    // ∫_z^∞ s^-(ak+1) ds = z^-ak / (ak), which turns Γ(ak+1) into Γ(ak).
    let alpha = params.alpha;
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..=n {
        let kf = k as f64;
        let ak = alpha * kf;
        let mag = (ln_gamma(ak) - ln_gamma(kf + 1.0) - ak * z.ln()).exp();
        if mag > prev {
            break;
        }
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * mag * sin_pi(0.5 * ak);
        prev = mag;
    }
    Ok(sum / PI)
}

/// Convergent series around the mode, terms `k = 0..=n` (odd terms vanish).
pub fn origin_series(params: &StableParams, x: f64, n: usize) -> Result<f64> {
    let alpha = params.alpha;
    ensure(alpha > 1.0 && alpha < 2.0, || {
        format!("origin series needs alpha strictly inside (1, 2), got {alpha}")
    })?;
    let z = (x - params.mu) / params.gamma;
    let mut sum = 0.0;
    for k in (0..=n).step_by(2) {
        let j = k / 2;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        let coef = (ln_gamma((kf + 1.0) / alpha) - ln_gamma(kf + 1.0)).exp() / alpha;
        sum += sign * coef * z.powi(k as i32);
    }
    Ok(sum / PI / params.gamma)
}

/// `Γ(1/alpha) / (alpha gamma pi)`, the density at the mode and its global maximum.
pub fn density_upper_bound(params: &StableParams) -> f64 {
    gamma(1.0 / params.alpha) / (params.alpha * params.gamma * PI)
}
