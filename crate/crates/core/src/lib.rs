//! Differential privacy with symmetric alpha-stable noise.
//!
//! The symmetric alpha-stable family interpolates between Cauchy (`α = 1`)
//! and Gaussian (`α = 2`) noise. For `α < 2` the mechanism that adds such
//! noise to a bounded query satisfies pure ε-differential privacy; this crate
//! evaluates the densities, finds ε, calibrates the noise scale to a target
//! budget, draws noise, and reports distortion and adversary bounds.
//!
//! ```
//! use sas_privacy::{epsilon_of, EvalConfig, StableParams};
//!
//! let noise = StableParams::new(1.5, 1.0, 0.0).unwrap();
//! let budget = epsilon_of(&noise, 1.0, &EvalConfig::default()).unwrap();
//! assert!(budget.epsilon > 0.0 && budget.is_pure());
//! ```

pub mod adversary;
pub mod error;
pub mod mechanisms;
pub mod privacy;
pub mod quadrature;
pub mod sampling;
pub mod special;
pub mod stable;

pub use adversary::{posterior_bounds, tradeoff_bound, TestBounds};
pub use error::{Error, Result};
pub use mechanisms::{
    aggregate_noise_scale, apply_mechanism, distortion_table, expected_distortion, local_apply, run_query, Dataset,
    MechanismKind, QueryKind, QuerySpec,
};
pub use privacy::{
    calibrate_gamma, cauchy_epsilon, cauchy_epsilon_small_gamma, epsilon_of, loss_curve, privacy_loss,
    vector_epsilon_bound, LossCurve, PrivacyBudget,
};
pub use sampling::{sample_gaussian, sample_laplace, sample_sas, NoiseRng, RngSeed};
pub use stable::{density, EvalConfig, StableParams};
