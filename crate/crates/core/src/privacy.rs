//! Privacy loss of the stable mechanism and the budget it implies.
//!
//! For neighbouring datasets whose query answers differ by the sensitivity
//! `Δ`, the noisy outputs have densities `p(x; α, γ, Δ)` and `p(x; α, γ, 0)`.
//! The privacy loss at observation `x` is their log-ratio and the budget is
//! its supremum over `x`. The maximizer always lies on the far side of the
//! numerator's location, so the search brackets outward from `x = Δ` in steps
//! of `γ` and refines by golden-section search.

use std::f64::consts::SQRT_2;

use crate::error::{ensure, Error, Result};
use crate::stable::{log_density, EvalConfig, StableParams};

/// Initial bracket step, in units of the noise scale.
const FIRST_STEP: f64 = 1.0 / 64.0;
/// The bracket may grow to this many noise scales before giving up.
const BRACKET_CEILING: f64 = 1e9;
/// Relative tolerance on the maximizer location.
const ARGMAX_TOL: f64 = 1e-10;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// An `(ε, δ)` pair. `δ = 0` is pure differential privacy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrivacyBudget {
    pub epsilon: f64,
    pub delta: f64,
}

impl PrivacyBudget {
    pub fn pure(epsilon: f64) -> Result<Self> {
        Self::approximate(epsilon, 0.0)
    }

    pub fn approximate(epsilon: f64, delta: f64) -> Result<Self> {
        ensure(epsilon >= 0.0 && !epsilon.is_nan(), || {
            format!("epsilon must be non-negative, got {epsilon}")
        })?;
        ensure((0.0..=1.0).contains(&delta), || {
            format!("delta must lie in [0, 1], got {delta}")
        })?;
        Ok(Self { epsilon, delta })
    }

    pub fn is_pure(&self) -> bool {
        self.delta == 0.0
    }
}

/// Privacy loss sampled on a grid, with the largest sampled value.
#[derive(Debug, Clone, PartialEq)]
pub struct LossCurve {
    pub grid: Vec<f64>,
    pub loss: Vec<f64>,
    pub argmax_x: f64,
    pub max_loss: f64,
}

/// Location and value of the privacy-loss maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossMaximum {
    pub argmax_x: f64,
    pub epsilon: f64,
}

fn check_sensitivity(sensitivity: f64) -> Result<()> {
    ensure(sensitivity > 0.0 && sensitivity.is_finite(), || {
        format!("sensitivity must be positive, got {sensitivity}")
    })
}

/// `ln p(x; α, γ, μ_num) - ln p(x; α, γ, μ_den)` for the noise law `noise` (its own location is ignored).
pub fn loss_between(noise: &StableParams, mu_num: f64, mu_den: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    if noise.is_gaussian() {
        // Both densities share one normalizer, so the ratio is exact algebra.
        let g2 = noise.gamma() * noise.gamma();
        return Ok(((x - mu_den).powi(2) - (x - mu_num).powi(2)) / (4.0 * g2));
    }
    let num = log_density(&noise.with_mu(mu_num)?, x, cfg)?;
    let den = log_density(&noise.with_mu(mu_den)?, x, cfg)?;
    Ok(num - den)
}

/// Privacy loss at `x` between answers `μ + Δ` (numerator) and `μ` (denominator), with `μ = params.mu()`.
pub fn privacy_loss(params: &StableParams, x: f64, sensitivity: f64, cfg: &EvalConfig) -> Result<f64> {
    check_sensitivity(sensitivity)?;
    loss_between(params, params.mu() + sensitivity, params.mu(), x, cfg)
}

/// Supremum over `x` of the loss between two locations.
pub fn max_loss_between(noise: &StableParams, mu_num: f64, mu_den: f64, cfg: &EvalConfig) -> Result<LossMaximum> {
    if noise.is_gaussian() {
        return Err(Error::UnboundedLoss);
    }
    if mu_num == mu_den {
        return Ok(LossMaximum {
            argmax_x: mu_num,
            epsilon: 0.0,
        });
    }
    let dir = (mu_num - mu_den).signum();
    let gamma = noise.gamma();
    let loss_at = |d: f64| loss_between(noise, mu_num, mu_den, mu_num + dir * d, cfg);

    // Walk outward until the loss turns down.
    let mut prev = (0.0, loss_at(0.0)?);
    let mut step = FIRST_STEP * gamma;
    let mut cur = (step, loss_at(step)?);
    let (lo, hi) = if cur.1 < prev.1 {
        (0.0, step)
    } else {
        loop {
            step *= 2.0;
            if step > BRACKET_CEILING * gamma {
                return Err(Error::MaxNotBracketed {
                    ceiling: mu_num + dir * step,
                });
            }
            let next = (step, loss_at(step)?);
            if next.1 < cur.1 {
                break (prev.0, next.0);
            }
            prev = cur;
            cur = next;
        }
    };

    let (d, value) = golden_max(&loss_at, lo, hi, mu_num.abs())?;
    Ok(LossMaximum {
        argmax_x: mu_num + dir * d,
        epsilon: value,
    })
}

/// Golden-section maximization on `[lo, hi]`; `offset` sets the scale of the relative tolerance.
fn golden_max<F: Fn(f64) -> Result<f64>>(f: &F, mut lo: f64, mut hi: f64, offset: f64) -> Result<(f64, f64)> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..200 {
        let scale = (offset + x1.abs()).max(f64::MIN_POSITIVE);
        if hi - lo <= ARGMAX_TOL * scale {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
        for cand in [(x1, f1), (x2, f2)] {
            if cand.1 > best.1 {
                best = cand;
            }
        }
    }
    // The bracket endpoints can win when the maximum sits on the boundary.
    for x in [lo, hi] {
        let v = f(x)?;
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

/// Maximum privacy loss for sensitivity `Δ` and the location where it occurs.
pub fn max_privacy_loss(params: &StableParams, sensitivity: f64, cfg: &EvalConfig) -> Result<LossMaximum> {
    check_sensitivity(sensitivity)?;
    let noise = params.with_mu(0.0)?;
    max_loss_between(&noise, sensitivity, 0.0, cfg)
}

/// Pure-DP budget of the stable mechanism (`α ∈ [1, 2)`).
pub fn epsilon_of(params: &StableParams, sensitivity: f64, cfg: &EvalConfig) -> Result<PrivacyBudget> {
    let max = max_privacy_loss(params, sensitivity, cfg)?;
    PrivacyBudget::pure(max.epsilon)
}

/// Closed-form budget for `α = 1`:
/// `ln[(√(4(γ/Δ)²+1) + 1) / (√(4(γ/Δ)²+1) - 1)]`, evaluated as the equivalent `2 asinh(Δ/(2γ))`.
pub fn cauchy_epsilon(gamma: f64, sensitivity: f64) -> f64 {
    2.0 * (sensitivity / (2.0 * gamma)).asinh()
}

/// Small-scale approximation `2 ln(√2 Δ / γ)` to the `α = 1` budget.
pub fn cauchy_epsilon_small_gamma(gamma: f64, sensitivity: f64) -> f64 {
    2.0 * (SQRT_2 * sensitivity / gamma).ln()
}

/// Large-scale approximation `Δ / γ` to the `α = 1` budget.
pub fn cauchy_epsilon_large_gamma(gamma: f64, sensitivity: f64) -> f64 {
    sensitivity / gamma
}

/// Budget of the Laplace mechanism with scale `b`.
pub fn laplace_epsilon(b: f64, sensitivity: f64) -> f64 {
    sensitivity / b
}

/// Budget of an `m`-dimensional query with independent per-coordinate noise.
pub fn vector_epsilon_bound(scalar_epsilon: f64, m: usize) -> f64 {
    m as f64 * scalar_epsilon
}

/// Scale `γ` at which the mechanism meets a pure-DP target.
///
/// `α = 1` inverts the closed form: `γ = Δ / (2 sinh(ε/2))`. Otherwise the
/// relation is checked to be decreasing on a coarse log grid and then
/// inverted by bisection in `ln γ`.
pub fn calibrate_gamma(alpha: f64, target: &PrivacyBudget, sensitivity: f64, cfg: &EvalConfig) -> Result<f64> {
    check_sensitivity(sensitivity)?;
    ensure(target.is_pure(), || {
        "calibration supports pure DP targets only (delta = 0)".into()
    })?;
    let eps = target.epsilon;
    ensure(eps > 0.0 && eps.is_finite(), || {
        format!("target epsilon must be positive, got {eps}")
    })?;
    let probe = StableParams::standard(alpha)?;
    if probe.is_gaussian() {
        return Err(Error::UnboundedLoss);
    }
    if probe.is_cauchy() {
        return Ok(sensitivity / (2.0 * (0.5 * eps).sinh()));
    }
    calibrate_gamma_numeric(alpha, eps, sensitivity, cfg)
}

/// Numerical calibration for any `α ∈ [1, 2)`: monotonicity scan, then bisection in `ln γ`.
pub fn calibrate_gamma_numeric(alpha: f64, eps: f64, sensitivity: f64, cfg: &EvalConfig) -> Result<f64> {
    check_sensitivity(sensitivity)?;
    ensure(eps > 0.0 && eps.is_finite(), || {
        format!("target epsilon must be positive, got {eps}")
    })?;
    if StableParams::standard(alpha)?.is_gaussian() {
        return Err(Error::UnboundedLoss);
    }
    let eps_at = |ln_gamma: f64| -> Result<f64> {
        let params = StableParams::new(alpha, ln_gamma.exp(), 0.0)?;
        Ok(max_privacy_loss(&params, sensitivity, cfg)?.epsilon)
    };

    // Coarse scan around the Cauchy solution, widened until it brackets the target.
    let center = (sensitivity / (2.0 * (0.5 * eps).sinh())).ln();
    let mut half_width = 3.0_f64;
    let (mut lo, mut hi) = loop {
        let knots: Vec<f64> = (0..8)
            .map(|i| center - half_width + 2.0 * half_width * i as f64 / 7.0)
            .collect();
        let values = knots.iter().map(|&k| eps_at(k)).collect::<Result<Vec<_>>>()?;
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::CalibrationFailed(format!(
                "epsilon is not decreasing in gamma for alpha = {alpha} (scan: {values:?})"
            )));
        }
        if values[0] >= eps && values[7] <= eps {
            let i = values.iter().position(|&v| v <= eps).expect("bracketed");
            break (knots[i - 1], knots[i]);
        }
        half_width *= 3.0;
        if half_width > 200.0 {
            return Err(Error::CalibrationFailed(format!(
                "could not bracket epsilon = {eps} for alpha = {alpha}"
            )));
        }
    };

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = eps_at(mid)?;
        if (v / eps - 1.0).abs() < 1e-10 || hi - lo < 1e-13 {
            return Ok(mid.exp());
        }
        if v > eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Privacy loss (numerator at `Δ`, denominator at 0) on `n_points` evenly spaced points of `[xmin, xmax]`.
pub fn loss_curve(
    params: &StableParams,
    sensitivity: f64,
    xmin: f64,
    xmax: f64,
    n_points: usize,
    cfg: &EvalConfig,
) -> Result<LossCurve> {
    check_sensitivity(sensitivity)?;
    let noise = params.with_mu(0.0)?;
    loss_curve_between(&noise, sensitivity, 0.0, xmin, xmax, n_points, cfg)
}

/// Like [`loss_curve`] with explicit numerator and denominator locations.
pub fn loss_curve_between(
    noise: &StableParams,
    mu_num: f64,
    mu_den: f64,
    xmin: f64,
    xmax: f64,
    n_points: usize,
    cfg: &EvalConfig,
) -> Result<LossCurve> {
    ensure(xmin < xmax, || format!("need xmin < xmax, got [{xmin}, {xmax}]"))?;
    ensure(n_points >= 2, || {
        format!("need at least two grid points, got {n_points}")
    })?;
    let grid = linspace(xmin, xmax, n_points);
    let loss = grid
        .iter()
        .map(|&x| loss_between(noise, mu_num, mu_den, x, cfg))
        .collect::<Result<Vec<_>>>()?;
    let (i, &max_loss) = loss
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least two points");
    Ok(LossCurve {
        argmax_x: grid[i],
        grid,
        loss,
        max_loss,
    })
}

/// `n` evenly spaced points including both ends.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}
