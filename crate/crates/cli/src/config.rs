//! Evaluation settings from an optional key=value file and the environment.

use std::path::Path;

use sas_privacy::stable::EvalConfig;

use crate::CliError;

/// Overrides the relative quadrature tolerance.
pub const QUAD_TOL_ENV: &str = "SAS_PRIVACY_QUAD_TOL";

/// Defaults, then the file at `path`, then the environment value `env_tol`.
///
/// Recognised keys: `quad_rel_tol`, `quad_abs_tol`, `tail_crossover`,
/// `series_terms`. Blank lines and lines starting with `#` are ignored.
pub fn load_eval_config(path: Option<&Path>, env_tol: Option<&str>) -> Result<EvalConfig, CliError> {
    let mut cfg = EvalConfig::default();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        apply(&mut cfg, &text).map_err(|m| CliError::Usage(format!("{}: {m}", path.display())))?;
    }
    if let Some(v) = env_tol {
        cfg.quad_rel_tol = parse_num(v).map_err(|m| CliError::Usage(format!("{QUAD_TOL_ENV}: {m}")))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_num(v: &str) -> Result<f64, String> {
    v.trim().parse().map_err(|_| format!("not a number: {v:?}"))
}

fn apply(cfg: &mut EvalConfig, text: &str) -> Result<(), String> {
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        match key.trim() {
            "quad_rel_tol" => cfg.quad_rel_tol = parse_num(value)?,
            "quad_abs_tol" => cfg.quad_abs_tol = parse_num(value)?,
            "tail_crossover" => cfg.tail_crossover = parse_num(value)?,
            "series_terms" => {
                cfg.series_terms = value
                    .trim()
                    .parse()
                    .map_err(|_| format!("line {}: series_terms must be a positive integer", i + 1))?
            }
            other => return Err(format!("line {}: unknown key {other:?}", i + 1)),
        }
    }
    Ok(())
}
