//! Data series for regenerating the published figures.
//!
//! | name | series |
//! |------|--------|
//! | fig2 | posterior bounds vs prior for ε ∈ {0.5, 1, 2, 3} |
//! | fig4 | loss curves for α ∈ {1, 1.25, 1.5, 1.75, 2}, γ = 1, x ∈ [-10, 10] |
//! | fig5 | loss curves for α = 1.5, γ ∈ {0.5, 1, 2, 4}, x ∈ [-10, 10] |
//! | fig6 | ε vs γ ∈ [1e-2, 1e3] for α ∈ {1, 1.5, 1.9} and Laplace |
//! | fig7 | α = 1: exact ε, both asymptotes and Laplace, γ ∈ [1e-3, 1e3] |
//! | fig8 | Γ(x) on (0, 3] with its minimum |
//!
//! Loss curves place the neighbouring answers at ±1/2 (sensitivity 1) so the
//! curves are antisymmetric about the origin. The Gaussian loss is then
//! `x / (2γ²)`; the `loss_normalized` column divides by that slope at γ = 1,
//! making the α = 2 curve exactly `x`.

use sas_privacy::adversary::posterior_bounds;
use sas_privacy::privacy::{
    cauchy_epsilon, cauchy_epsilon_large_gamma, cauchy_epsilon_small_gamma, laplace_epsilon, linspace,
    loss_curve_between, max_privacy_loss,
};
use sas_privacy::special::gamma as gamma_fn;
use sas_privacy::stable::{EvalConfig, StableParams};

use crate::report::Report;
use crate::{CliError, FigureName};

const LOSS_GRID: (f64, f64, usize) = (-10.0, 10.0, 401);

pub fn figure(name: FigureName, cfg: &EvalConfig) -> Result<Report, CliError> {
    match name {
        FigureName::Fig2 => Ok(fig2()),
        FigureName::Fig4 => fig4(cfg),
        FigureName::Fig5 => fig5(cfg),
        FigureName::Fig6 => fig6(cfg),
        FigureName::Fig7 => Ok(fig7()),
        FigureName::Fig8 => Ok(fig8()),
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.log10(), hi.log10(), n)
        .into_iter()
        .map(|e| 10f64.powf(e))
        .collect()
}

fn fig2() -> Report {
    let mut rows = Vec::new();
    for eps in [0.5, 1.0, 2.0, 3.0] {
        for prior in linspace(0.01, 0.99, 99) {
            let (lo, hi) = posterior_bounds(prior, eps);
            rows.push(vec![eps, prior, lo, hi]);
        }
    }
    Report::table(&["epsilon", "prior", "posterior_lo", "posterior_hi"], rows)
}

fn symmetric_curve(alpha: f64, gamma: f64, cfg: &EvalConfig) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let noise = StableParams::new(alpha, gamma, 0.0)?;
    let (lo, hi, n) = LOSS_GRID;
    let c = loss_curve_between(&noise, 0.5, -0.5, lo, hi, n, cfg)?;
    Ok((c.grid, c.loss))
}

fn fig4(cfg: &EvalConfig) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    for alpha in [1.0, 1.25, 1.5, 1.75, 2.0] {
        let (x, loss) = symmetric_curve(alpha, 1.0, cfg)?;
        for (x, l) in x.into_iter().zip(loss) {
            rows.push(vec![alpha, x, l, 2.0 * l]);
        }
    }
    Ok(Report::table(&["alpha", "x", "loss", "loss_normalized"], rows))
}

fn fig5(cfg: &EvalConfig) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    for gamma in [0.5, 1.0, 2.0, 4.0] {
        let (x, loss) = symmetric_curve(1.5, gamma, cfg)?;
        for (x, l) in x.into_iter().zip(loss) {
            rows.push(vec![gamma, x, l]);
        }
    }
    Ok(Report::table(&["gamma", "x", "loss"], rows))
}

fn fig6(cfg: &EvalConfig) -> Result<Report, CliError> {
    let alphas = [1.0, 1.5, 1.9];
    let mut rows = Vec::new();
    for g in log_grid(1e-2, 1e3, 51) {
        let mut row = vec![g];
        for alpha in alphas {
            let params = StableParams::new(alpha, g, 0.0)?;
            row.push(max_privacy_loss(&params, 1.0, cfg)?.epsilon);
        }
        row.push(laplace_epsilon(g, 1.0));
        rows.push(row);
    }
    Ok(Report::table(
        &["gamma", "sas_alpha_1", "sas_alpha_1.5", "sas_alpha_1.9", "laplace"],
        rows,
    ))
}

fn fig7() -> Report {
    let rows = log_grid(1e-3, 1e3, 61)
        .into_iter()
        .map(|g| {
            vec![
                g,
                cauchy_epsilon(g, 1.0),
                cauchy_epsilon_small_gamma(g, 1.0),
                cauchy_epsilon_large_gamma(g, 1.0),
                laplace_epsilon(g, 1.0),
            ]
        })
        .collect();
    Report::table(&["gamma", "exact", "small_gamma", "large_gamma", "laplace"], rows)
}

/// Minimum of Γ on the positive axis, by golden-section search on [1, 2].
pub fn gamma_minimum() -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (1.0, 2.0);
    while b - a > 1e-12 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if gamma_fn(c) < gamma_fn(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let x = 0.5 * (a + b);
    (x, gamma_fn(x))
}

fn fig8() -> Report {
    let rows = linspace(0.02, 3.0, 150)
        .into_iter()
        .map(|x| vec![x, gamma_fn(x)])
        .collect();
    let (argmin, min) = gamma_minimum();
    Report::table(&["x", "gamma"], rows).with_footer(vec![("argmin", argmin), ("min", min)])
}
