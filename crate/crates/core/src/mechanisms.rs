//! Bounded queries and the noise mechanisms applied to their answers.
//!
//! Neighbouring datasets differ by the presence or absence of one record.
//! Every built-in query clips record values to its declared range, so the
//! reported sensitivity holds for any input:
//!
//! | query | ℓ1 sensitivity |
//! |-------|----------------|
//! | count | 1 |
//! | sum   | `max(|lo|, |hi|)` |
//! | mean  | `(hi - lo) / n` |

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use crate::error::{ensure, Error, Result};
use crate::privacy::{epsilon_of, laplace_epsilon, vector_epsilon_bound};
use crate::sampling::{NoiseRng, RngSeed};
use crate::special::gamma;
use crate::stable::{EvalConfig, StableParams};

/// One cell of a [`Dataset`].
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl Value {
    fn parse(field: &str) -> Self {
        match field.trim().parse::<f64>() {
            Ok(v) => Value::Number(v),
            Err(_) => Value::Text(field.to_string()),
        }
    }
}

/// Rows of named fields, as read from a CSV file with a header row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Dataset {
    pub fn new(columns: Vec<String>, rows: Vec<Vec<Value>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::Schema(format!(
                    "row {i} has {} fields, header has {}",
                    row.len(),
                    columns.len()
                )));
            }
        }
        Ok(Self { columns, rows })
    }

    /// Single numeric column.
    pub fn from_values(column: &str, values: &[f64]) -> Self {
        Self {
            columns: vec![column.to_string()],
            rows: values.iter().map(|&v| vec![Value::Number(v)]).collect(),
        }
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let columns: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
        let mut rows = Vec::new();
        for record in rdr.records() {
            rows.push(record?.iter().map(Value::parse).collect());
        }
        Self::new(columns, rows)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file =
            std::fs::File::open(path.as_ref()).map_err(|e| Error::Csv(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_csv_reader(file)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    /// Values of a numeric column.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let j = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Schema(format!("no column named {name:?}")))?;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| match &row[j] {
                Value::Number(v) => Ok(*v),
                Value::Text(t) => Err(Error::Schema(format!("column {name:?} row {i}: {t:?} is not numeric"))),
            })
            .collect()
    }

    /// Records as name → value maps.
    pub fn records(&self) -> impl Iterator<Item = HashMap<&str, &Value>> + '_ {
        self.rows
            .iter()
            .map(|row| self.columns.iter().map(String::as_str).zip(row).collect())
    }

    /// Neighbour with record `i` removed.
    pub fn without_row(&self, i: usize) -> Self {
        let mut rows = self.rows.clone();
        rows.remove(i);
        Self {
            columns: self.columns.clone(),
            rows,
        }
    }

    /// Neighbour with one extra record.
    pub fn with_row(&self, row: Vec<Value>) -> Result<Self> {
        let mut rows = self.rows.clone();
        rows.push(row);
        Self::new(self.columns.clone(), rows)
    }
}

/// User-supplied query over the clipped column values.
#[derive(Debug, Clone, Copy)]
pub struct CustomQuery {
    pub f: fn(&[f64]) -> Vec<f64>,
    pub l1_sensitivity: f64,
    pub l2_sensitivity: f64,
}

#[derive(Debug, Clone, Copy)]
pub enum QueryKind {
    Count,
    Sum,
    Mean,
    Custom(CustomQuery),
}

/// A query with its declared output range `[lo, hi]` and dimension.
#[derive(Debug, Clone)]
pub struct QuerySpec {
    pub kind: QueryKind,
    pub column: Option<String>,
    pub range_lo: f64,
    pub range_hi: f64,
    pub dimension: usize,
}

impl QuerySpec {
    /// Row count, clipped to `[lo, hi]`.
    pub fn count(lo: f64, hi: f64) -> Result<Self> {
        Self::build(QueryKind::Count, None, lo, hi, 1)
    }

    pub fn sum(column: &str, lo: f64, hi: f64) -> Result<Self> {
        Self::build(QueryKind::Sum, Some(column), lo, hi, 1)
    }

    pub fn mean(column: &str, lo: f64, hi: f64) -> Result<Self> {
        Self::build(QueryKind::Mean, Some(column), lo, hi, 1)
    }

    pub fn custom(column: &str, lo: f64, hi: f64, dimension: usize, query: CustomQuery) -> Result<Self> {
        ensure(query.l1_sensitivity > 0.0 && query.l2_sensitivity > 0.0, || {
            "custom query sensitivities must be positive".into()
        })?;
        Self::build(QueryKind::Custom(query), Some(column), lo, hi, dimension)
    }

    fn build(kind: QueryKind, column: Option<&str>, lo: f64, hi: f64, dimension: usize) -> Result<Self> {
        ensure(lo.is_finite() && hi.is_finite() && lo < hi, || {
            format!("range must satisfy lo < hi, got [{lo}, {hi}]")
        })?;
        ensure(dimension >= 1, || "query dimension must be at least 1".into())?;
        Ok(Self {
            kind,
            column: column.map(str::to_string),
            range_lo: lo,
            range_hi: hi,
            dimension,
        })
    }

    fn clip(&self, v: f64) -> f64 {
        v.clamp(self.range_lo, self.range_hi)
    }

    /// ℓ1 sensitivity for a dataset of `n` records.
    pub fn l1_sensitivity(&self, n: usize) -> Result<f64> {
        match self.kind {
            QueryKind::Count => Ok(1.0),
            QueryKind::Sum => Ok(self.range_lo.abs().max(self.range_hi.abs())),
            QueryKind::Mean => {
                if n == 0 {
                    return Err(Error::EmptyDataset);
                }
                Ok((self.range_hi - self.range_lo) / n as f64)
            }
            QueryKind::Custom(c) => Ok(c.l1_sensitivity),
        }
    }

    /// ℓ2 sensitivity; equal to ℓ1 for the scalar built-ins.
    pub fn l2_sensitivity(&self, n: usize) -> Result<f64> {
        match self.kind {
            QueryKind::Custom(c) => Ok(c.l2_sensitivity),
            _ => self.l1_sensitivity(n),
        }
    }
}

/// Exact (non-private) answer to `q`.
pub fn run_query(data: &Dataset, q: &QuerySpec) -> Result<Vec<f64>> {
    let clipped = || -> Result<Vec<f64>> {
        let name = q
            .column
            .as_deref()
            .ok_or_else(|| Error::Schema("query needs a column".into()))?;
        Ok(data.column(name)?.into_iter().map(|v| q.clip(v)).collect())
    };
    match q.kind {
        QueryKind::Count => Ok(vec![q.clip(data.len() as f64)]),
        QueryKind::Sum => Ok(vec![clipped()?.iter().sum()]),
        QueryKind::Mean => {
            let v = clipped()?;
            if v.is_empty() {
                return Err(Error::EmptyDataset);
            }
            Ok(vec![v.iter().sum::<f64>() / v.len() as f64])
        }
        QueryKind::Custom(c) => {
            let out = (c.f)(&clipped()?);
            if out.len() != q.dimension {
                return Err(Error::Schema(format!(
                    "custom query returned {} values, declared dimension {}",
                    out.len(),
                    q.dimension
                )));
            }
            Ok(out)
        }
    }
}

/// Noise distribution of a mechanism.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MechanismKind {
    /// Symmetric stable noise; the location of the parameters is ignored.
    Sas(StableParams),
    Laplace {
        b: f64,
    },
    Gaussian {
        sigma: f64,
    },
}

impl MechanismKind {
    pub fn sas(alpha: f64, gamma: f64) -> Result<Self> {
        Ok(MechanismKind::Sas(StableParams::new(alpha, gamma, 0.0)?))
    }

    pub fn laplace(b: f64) -> Result<Self> {
        ensure(b > 0.0 && b.is_finite(), || {
            format!("Laplace scale must be positive, got {b}")
        })?;
        Ok(MechanismKind::Laplace { b })
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        ensure(sigma > 0.0 && sigma.is_finite(), || {
            format!("Gaussian sigma must be positive, got {sigma}")
        })?;
        Ok(MechanismKind::Gaussian { sigma })
    }

    /// One noise draw.
    pub fn draw(&self, rng: &mut NoiseRng) -> f64 {
        match self {
            MechanismKind::Sas(p) => p.gamma() * rng.standard_stable(p.alpha()),
            MechanismKind::Laplace { b } => rng.laplace(*b),
            MechanismKind::Gaussian { sigma } => rng.gaussian(*sigma),
        }
    }

    /// Pure-DP budget for ℓ1 sensitivity `sensitivity` on an `m`-dimensional answer.
    /// `None` for mechanisms without a finite pure-DP budget (Gaussian noise).
    pub fn epsilon(&self, sensitivity: f64, m: usize, cfg: &EvalConfig) -> Result<Option<f64>> {
        let scalar = match self {
            MechanismKind::Sas(p) if p.is_gaussian() => return Ok(None),
            MechanismKind::Sas(p) => epsilon_of(p, sensitivity, cfg)?.epsilon,
            MechanismKind::Laplace { b } => laplace_epsilon(*b, sensitivity),
            MechanismKind::Gaussian { .. } => return Ok(None),
        };
        Ok(Some(if m == 1 {
            scalar
        } else {
            vector_epsilon_bound(scalar, m)
        }))
    }
}

/// `answer + noise`, one independent draw per coordinate.
pub fn apply_mechanism(answer: &[f64], mech: &MechanismKind, seed: RngSeed) -> Vec<f64> {
    let mut rng = NoiseRng::new(seed);
    answer.iter().map(|a| a + mech.draw(&mut rng)).collect()
}

/// Perturbs each record independently before any aggregation.
pub fn local_apply(record_values: &[f64], mech: &MechanismKind, seed: RngSeed) -> Vec<f64> {
    apply_mechanism(record_values, mech, seed)
}

/// Scale of the summed noise of `n` locally perturbed records: `n^(1/α) γ`.
pub fn aggregate_noise_scale(n: usize, alpha: f64, gamma: f64) -> f64 {
    (n as f64).powf(1.0 / alpha) * gamma
}

/// Mean absolute deviation `E|Y|` of the noise; infinite for Cauchy noise.
pub fn expected_distortion(mech: &MechanismKind) -> f64 {
    match mech {
        MechanismKind::Sas(p) if p.is_cauchy() => f64::INFINITY,
        MechanismKind::Sas(p) => 2.0 * p.gamma() / PI * gamma(1.0 - 1.0 / p.alpha()),
        MechanismKind::Laplace { b } => *b,
        MechanismKind::Gaussian { sigma } => (2.0 / PI).sqrt() * sigma,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionRow {
    pub alpha: f64,
    pub distortion: f64,
}

/// `E|Y|` of stable noise with scale `gamma` for each `alpha`.
pub fn distortion_table(alphas: &[f64], gamma: f64) -> Result<Vec<DistortionRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            let mech = MechanismKind::sas(alpha, gamma)?;
            Ok(DistortionRow {
                alpha,
                distortion: expected_distortion(&mech),
            })
        })
        .collect()
}
