//! What an ε budget means for an adversary.
//!
//! An adversary testing "record present" against "record absent" with false
//! positive rate `p` and false negative rate `q` is constrained by
//! `p + e^ε q ≥ 1` and `e^ε p + q ≥ 1`, hence `p + q ≥ 2 / (1 + e^ε)`.
//!
//! The output densities differ by at most a factor `e^ε`, so by Bayes' rule a
//! prior belief `π` can move at most to
//! `π e^{±ε} / (π e^{±ε} + 1 - π)` after seeing any output.

/// Hypothesis-testing limits implied by ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestBounds {
    pub epsilon: f64,
    /// Lower bound on `p + q`.
    pub min_error_sum: f64,
    /// The two constraints evaluated at the symmetric optimum `p = q`:
    /// `p + e^ε q` and `e^ε p + q`. Both equal 1 there.
    pub constraint_pair: (f64, f64),
}

/// `p + q ≥ 2 / (1 + e^ε)`. Negative or NaN ε gives NaN fields.
pub fn tradeoff_bound(epsilon: f64) -> TestBounds {
    if epsilon.is_nan() || epsilon < 0.0 {
        return TestBounds {
            epsilon,
            min_error_sum: f64::NAN,
            constraint_pair: (f64::NAN, f64::NAN),
        };
    }
    // 2 / (1 + e^ε) written to stay finite for large ε.
    let p = 1.0 / (1.0 + epsilon.exp());
    let e = epsilon.exp();
    let c = if e.is_finite() { p + e * p } else { 1.0 };
    TestBounds {
        epsilon,
        min_error_sum: 2.0 * p,
        constraint_pair: (c, c),
    }
}

/// Posterior range `(lo, hi)` reachable from `prior` under an ε-DP release.
pub fn posterior_bounds(prior: f64, epsilon: f64) -> (f64, f64) {
    let update = |e: f64| {
        let num = prior * e;
        num / (num + 1.0 - prior)
    };
    (update((-epsilon).exp()), update(epsilon.exp()))
}
