//! Adversary bounds, including a simulated likelihood-ratio attacker.

use approx::assert_relative_eq;
use proptest::prelude::*;
use sas_privacy::adversary::{posterior_bounds, tradeoff_bound};
use sas_privacy::privacy::{epsilon_of, privacy_loss};
use sas_privacy::sampling::{sample_sas, RngSeed};
use sas_privacy::stable::{EvalConfig, StableParams};

#[test]
fn perfect_privacy_degenerates() {
    assert_eq!(tradeoff_bound(0.0).min_error_sum, 1.0);
    for prior in [0.01, 0.1, 0.5, 0.93] {
        let (lo, hi) = posterior_bounds(prior, 0.0);
        assert_relative_eq!(lo, prior, max_relative = 1e-15);
        assert_relative_eq!(hi, prior, max_relative = 1e-15);
    }
}

#[test]
fn likelihood_ratio_three() {
    assert_relative_eq!(tradeoff_bound(3f64.ln()).min_error_sum, 0.5, max_relative = 1e-15);
    let (lo, hi) = posterior_bounds(0.5, 3f64.ln());
    assert_relative_eq!(lo, 0.25, max_relative = 1e-15);
    assert_relative_eq!(hi, 0.75, max_relative = 1e-15);
}

#[test]
fn budgets_give_meaningful_bounds() {
    let cfg = EvalConfig::default();
    for alpha in [1.0, 1.2, 1.5, 1.8] {
        for gamma in [0.1, 1.0, 10.0] {
            let e = epsilon_of(&StableParams::new(alpha, gamma, 0.0).unwrap(), 1.0, &cfg)
                .unwrap()
                .epsilon;
            let b = tradeoff_bound(e).min_error_sum;
            assert!(b > 0.0 && b <= 1.0, "alpha={alpha} gamma={gamma}: {b}");
        }
    }
}

/// Smallest `p + q` an attacker achieves by thresholding the privacy loss.
fn best_attack(loss_absent: &[f64], loss_present: &[f64], epsilon: f64) -> f64 {
    let mut a = loss_absent.to_vec();
    let mut b = loss_present.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    (0..=400)
        .map(|i| -1.1 * epsilon + 2.2 * epsilon * i as f64 / 400.0)
        .map(|t| {
            // Decide "present" when the loss exceeds t.
            let false_pos = (a.len() - a.partition_point(|&l| l <= t)) as f64 / na;
            let false_neg = b.partition_point(|&l| l <= t) as f64 / nb;
            false_pos + false_neg
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn simulated_attacker_respects_the_bound() {
    let cfg = EvalConfig::default();
    let trials = 100_000;
    for (alpha, gamma) in [(1.5, 1.0), (1.2, 0.5), (1.8, 2.0)] {
        let noise = StableParams::new(alpha, gamma, 0.0).unwrap();
        let e = epsilon_of(&noise, 1.0, &cfg).unwrap().epsilon;
        let loss = |x: &f64| privacy_loss(&noise, *x, 1.0, &cfg).unwrap();
        let absent: Vec<f64> = sample_sas(&noise, trials, RngSeed(41)).iter().map(loss).collect();
        let present: Vec<f64> = sample_sas(&noise.with_mu(1.0).unwrap(), trials, RngSeed(42))
            .iter()
            .map(loss)
            .collect();
        let achieved = best_attack(&absent, &present, e);
        let bound = tradeoff_bound(e).min_error_sum;
        assert!(achieved >= bound - 0.02, "alpha={alpha}: p+q={achieved} bound={bound}");
        // The attacker must also do better than guessing, or the test is vacuous.
        assert!(achieved < 0.99);
    }
}

proptest! {
    #[test]
    fn posterior_brackets_prior(prior in 0.001f64..0.999, eps in 0.0f64..20.0) {
        let (lo, hi) = posterior_bounds(prior, eps);
        prop_assert!(lo <= prior && prior <= hi);
        if eps > 1e-6 {
            prop_assert!(lo < prior && prior < hi);
        }
    }

    #[test]
    fn posterior_widens_with_epsilon(prior in 0.01f64..0.99, e1 in 0.0f64..10.0, de in 0.01f64..5.0) {
        let (lo1, hi1) = posterior_bounds(prior, e1);
        let (lo2, hi2) = posterior_bounds(prior, e1 + de);
        prop_assert!(hi2 > hi1 && lo2 < lo1);
    }

    #[test]
    fn tradeoff_in_unit_interval(eps in 0.0f64..700.0) {
        let b = tradeoff_bound(eps);
        prop_assert!(b.min_error_sum > 0.0 || eps > 700.0);
        prop_assert!(b.min_error_sum <= 1.0);
        prop_assert!((b.constraint_pair.0 - 1.0).abs() < 1e-12);
    }
}
