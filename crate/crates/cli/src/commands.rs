use sas_privacy::adversary::{posterior_bounds, tradeoff_bound};
use sas_privacy::mechanisms::{apply_mechanism, distortion_table, run_query, Dataset, MechanismKind, QuerySpec};
use sas_privacy::privacy::{
    calibrate_gamma, calibrate_gamma_numeric, linspace, loss_curve, max_privacy_loss, PrivacyBudget,
};
use sas_privacy::sampling::{sample_gaussian, sample_laplace, sample_sas, RngSeed};
use sas_privacy::stable::{density, EvalConfig, StableParams};

use crate::figures;
use crate::report::{Field, Report};
use crate::{CliError, Command, MechArg, MechOpts, QueryArg};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses an inclusive grid `lo:hi:n`.
pub(crate) fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || usage(format!("grid must be lo:hi:n with lo < hi and n >= 2, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi || n < 2 {
        return Err(bad());
    }
    Ok(linspace(lo, hi, n))
}

fn mechanism(
    opts: &MechOpts,
    sensitivity: f64,
    target: Option<f64>,
    cfg: &EvalConfig,
) -> Result<MechanismKind, CliError> {
    let budget = |eps: f64| PrivacyBudget::pure(eps).map_err(CliError::from);
    match opts.mech {
        MechArg::Sas => {
            let alpha = opts.alpha.ok_or_else(|| usage("--mech sas needs --alpha"))?;
            let gamma = match (opts.gamma, target) {
                (Some(g), _) => g,
                (None, Some(eps)) => calibrate_gamma(alpha, &budget(eps)?, sensitivity, cfg)?,
                (None, None) => return Err(usage("--mech sas needs --gamma or --epsilon")),
            };
            Ok(MechanismKind::sas(alpha, gamma)?)
        }
        MechArg::Laplace => {
            let b = match (opts.b, target) {
                (Some(b), _) => b,
                (None, Some(eps)) if eps > 0.0 => sensitivity / eps,
                (None, Some(eps)) => return Err(usage(format!("--epsilon must be positive, got {eps}"))),
                (None, None) => return Err(usage("--mech laplace needs --b or --epsilon")),
            };
            Ok(MechanismKind::laplace(b)?)
        }
        MechArg::Gaussian => {
            let sigma = opts.sigma.ok_or_else(|| usage("--mech gaussian needs --sigma"))?;
            Ok(MechanismKind::gaussian(sigma)?)
        }
    }
}

/// Runs one subcommand.
pub fn execute(command: &Command, cfg: &EvalConfig) -> Result<Report, CliError> {
    match command {
        Command::Density {
            alpha,
            gamma,
            mu,
            x,
            grid,
        } => {
            let params = StableParams::new(*alpha, *gamma, *mu)?;
            let points = match grid {
                Some(g) => parse_grid(g)?,
                None => x.clone(),
            };
            let rows = points
                .iter()
                .map(|&x| Ok(vec![x, density(&params, x, cfg)?]))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Report::table(&["x", "pdf"], rows))
        }
        Command::Losscurve {
            alpha,
            gamma,
            sensitivity,
            grid,
        } => {
            let params = StableParams::new(*alpha, *gamma, 0.0)?;
            let g = parse_grid(grid)?;
            let curve = loss_curve(&params, *sensitivity, g[0], g[g.len() - 1], g.len(), cfg)?;
            let rows = curve.grid.iter().zip(&curve.loss).map(|(&x, &l)| vec![x, l]).collect();
            Ok(Report::table(&["x", "loss"], rows)
                .with_footer(vec![("argmax", curve.argmax_x), ("max", curve.max_loss)]))
        }
        Command::Epsilon {
            alpha,
            gamma,
            sensitivity,
        } => {
            let params = StableParams::new(*alpha, *gamma, 0.0)?;
            let max = max_privacy_loss(&params, *sensitivity, cfg)?;
            Ok(Report::record(vec![
                ("epsilon", Field::Num(max.epsilon)),
                ("argmax_x", Field::Num(max.argmax_x)),
            ]))
        }
        Command::Calibrate {
            alpha,
            epsilon,
            sensitivity,
            numeric,
        } => {
            let gamma = if *numeric {
                calibrate_gamma_numeric(*alpha, *epsilon, *sensitivity, cfg)?
            } else {
                calibrate_gamma(*alpha, &PrivacyBudget::pure(*epsilon)?, *sensitivity, cfg)?
            };
            Ok(Report::record(vec![("gamma", Field::Num(gamma))]))
        }
        Command::Sample { mech, n, seed, mu } => {
            let seed = RngSeed(*seed);
            let values = match mech.mech {
                MechArg::Sas => {
                    let alpha = mech.alpha.ok_or_else(|| usage("--mech sas needs --alpha"))?;
                    let params = StableParams::new(alpha, mech.gamma.unwrap_or(1.0), *mu)?;
                    sample_sas(&params, *n, seed)
                }
                MechArg::Laplace => sample_laplace(mech.b.ok_or_else(|| usage("--mech laplace needs --b"))?, *n, seed)?,
                MechArg::Gaussian => sample_gaussian(
                    mech.sigma.ok_or_else(|| usage("--mech gaussian needs --sigma"))?,
                    *n,
                    seed,
                )?,
            };
            Ok(Report::Values {
                name: "samples".into(),
                values,
            })
        }
        Command::Distortion { alpha_list, gamma } => {
            let rows = distortion_table(alpha_list, *gamma)?
                .into_iter()
                .map(|r| vec![r.alpha, r.distortion])
                .collect();
            Ok(Report::table(&["alpha", "distortion"], rows))
        }
        Command::Bounds { epsilon, prior } => {
            if epsilon.is_nan() || *epsilon < 0.0 {
                return Err(usage(format!("--epsilon must be non-negative, got {epsilon}")));
            }
            let mut fields = vec![("min_error_sum", Field::Num(tradeoff_bound(*epsilon).min_error_sum))];
            if let Some(p) = prior {
                if !(*p > 0.0 && *p < 1.0) {
                    return Err(usage(format!("--prior must lie in (0, 1), got {p}")));
                }
                let (lo, hi) = posterior_bounds(*p, *epsilon);
                fields.push(("posterior_lo", Field::Num(lo)));
                fields.push(("posterior_hi", Field::Num(hi)));
            }
            Ok(Report::record(fields))
        }
        Command::PrivateQuery {
            data,
            query,
            column,
            lo,
            hi,
            mech,
            epsilon,
            seed,
        } => {
            let dataset = Dataset::from_csv_path(data)?;
            let ranged = |kind: &str| -> Result<(String, f64, f64), CliError> {
                let col = column
                    .clone()
                    .ok_or_else(|| usage(format!("--query {kind} needs --column")))?;
                let lo = lo.ok_or_else(|| usage(format!("--query {kind} needs --lo")))?;
                let hi = hi.ok_or_else(|| usage(format!("--query {kind} needs --hi")))?;
                Ok((col, lo, hi))
            };
            let q = match query {
                QueryArg::Count => QuerySpec::count(lo.unwrap_or(0.0), hi.unwrap_or(f64::MAX))?,
                QueryArg::Sum => {
                    let (c, lo, hi) = ranged("sum")?;
                    QuerySpec::sum(&c, lo, hi)?
                }
                QueryArg::Mean => {
                    let (c, lo, hi) = ranged("mean")?;
                    QuerySpec::mean(&c, lo, hi)?
                }
            };
            let answer = run_query(&dataset, &q)?;
            let sensitivity = q.l1_sensitivity(dataset.len())?;
            let mech = mechanism(mech, sensitivity, *epsilon, cfg)?;
            let noisy = apply_mechanism(&answer, &mech, RngSeed(*seed));
            let eps = mech.epsilon(sensitivity, q.dimension, cfg)?;
            Ok(Report::record(vec![
                ("true_value_suppressed", Field::Bool(true)),
                ("private_value", Field::Num(noisy[0])),
                ("epsilon", eps.map_or(Field::Null, Field::Num)),
            ]))
        }
        Command::Figure { name } => figures::figure(*name, cfg),
    }
}
