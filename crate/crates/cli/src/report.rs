//! Command results and their CSV / JSON rendering.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Bool(bool),
    Null,
}

/// Output of one command.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    /// Columns of numbers plus optional summary fields (a `#` comment row in CSV).
    Table {
        columns: Vec<String>,
        rows: Vec<Vec<f64>>,
        footer: Vec<(String, f64)>,
    },
    /// A single record: one CSV row or one JSON object.
    Record(Vec<(String, Field)>),
    /// Bare values, one per line in CSV.
    Values { name: String, values: Vec<f64> },
}

impl Report {
    pub fn table(columns: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Report::Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            footer: Vec::new(),
        }
    }

    pub fn with_footer(self, extra: Vec<(&str, f64)>) -> Self {
        match self {
            Report::Table {
                columns,
                rows,
                mut footer,
            } => {
                footer.extend(extra.into_iter().map(|(k, v)| (k.to_string(), v)));
                Report::Table { columns, rows, footer }
            }
            other => other,
        }
    }

    pub fn record(fields: Vec<(&str, Field)>) -> Self {
        Report::Record(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    /// Column `name` of a table.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        match self {
            Report::Table { columns, rows, .. } => {
                let j = columns.iter().position(|c| c == name)?;
                Some(rows.iter().map(|r| r[j]).collect())
            }
            _ => None,
        }
    }

    /// Numeric field of a record or footer entry of a table.
    pub fn field(&self, name: &str) -> Option<f64> {
        match self {
            Report::Record(fields) => fields.iter().find(|(k, _)| k == name).and_then(|(_, v)| match v {
                Field::Num(x) => Some(*x),
                _ => None,
            }),
            Report::Table { footer, .. } => footer.iter().find(|(k, _)| k == name).map(|(_, v)| *v),
            Report::Values { .. } => None,
        }
    }

    pub fn write(&self, out: &mut dyn Write, format: Format, precision: usize) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out, precision),
            Format::Json => {
                serde_json::to_writer(&mut *out, &self.to_json(precision))?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write, precision: usize) -> io::Result<()> {
        let fmt = |v: f64| format_number(v, precision);
        match self {
            Report::Table { columns, rows, footer } => {
                writeln!(out, "{}", columns.join(","))?;
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|&v| fmt(v)).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                if !footer.is_empty() {
                    let mut obj = Map::new();
                    for (k, v) in footer {
                        obj.insert(k.clone(), json_number(*v, precision));
                    }
                    writeln!(out, "# {}", Value::Object(obj))?;
                }
            }
            Report::Record(fields) => {
                let keys: Vec<&str> = fields.iter().map(|(k, _)| k.as_str()).collect();
                let cells: Vec<String> = fields
                    .iter()
                    .map(|(_, v)| match v {
                        Field::Num(x) => fmt(*x),
                        Field::Bool(b) => b.to_string(),
                        Field::Null => String::new(),
                    })
                    .collect();
                writeln!(out, "{}", keys.join(","))?;
                writeln!(out, "{}", cells.join(","))?;
            }
            Report::Values { values, .. } => {
                for &v in values {
                    writeln!(out, "{}", fmt(v))?;
                }
            }
        }
        Ok(())
    }

    fn to_json(&self, precision: usize) -> Value {
        let mut obj = Map::new();
        match self {
            Report::Table { columns, rows, footer } => {
                for (j, c) in columns.iter().enumerate() {
                    let col = rows.iter().map(|r| json_number(r[j], precision)).collect();
                    obj.insert(c.clone(), Value::Array(col));
                }
                for (k, v) in footer {
                    obj.insert(k.clone(), json_number(*v, precision));
                }
            }
            Report::Record(fields) => {
                for (k, v) in fields {
                    let v = match v {
                        Field::Num(x) => json_number(*x, precision),
                        Field::Bool(b) => Value::Bool(*b),
                        Field::Null => Value::Null,
                    };
                    obj.insert(k.clone(), v);
                }
            }
            Report::Values { name, values } => {
                obj.insert(
                    name.clone(),
                    Value::Array(values.iter().map(|&v| json_number(v, precision)).collect()),
                );
            }
        }
        Value::Object(obj)
    }
}

/// Rounds to `precision` significant digits.
pub fn round_significant(v: f64, precision: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", precision.saturating_sub(1), v).parse().unwrap_or(v)
}

/// `precision` significant digits, trailing zeros dropped; `inf`, `-inf`, `nan` for non-finite values.
pub fn format_number(v: f64, precision: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let r = round_significant(v, precision);
    if (1e-5..1e16).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn json_number(v: f64, precision: usize) -> Value {
    // Adding 0.0 turns -0.0 into 0.0.
    match Number::from_f64(round_significant(v, precision) + 0.0) {
        Some(n) => Value::Number(n),
        None => Value::String(format_number(v, precision)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(r: &Report, f: Format) -> String {
        let mut buf = Vec::new();
        r.write(&mut buf, f, 9).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(1.0 / std::f64::consts::PI, 9), "0.318309886");
        assert_eq!(format_number(0.5, 9), "0.5");
        assert_eq!(format_number(-0.0, 9), "0");
        assert_eq!(format_number(100.0, 9), "100");
        assert_eq!(format_number(1.7079364753434624e-5, 4), "0.00001708");
        assert_eq!(format_number(2.894e-7, 9), "2.894e-7");
        assert_eq!(format_number(f64::INFINITY, 9), "inf");
        assert_eq!(format_number(1.0 / 3.0, 17), "0.3333333333333333");
        assert_eq!(format_number(2.0 / 3.0, 1), "0.7");
    }

    #[test]
    fn table_csv_and_json() {
        let r = Report::table(&["x", "loss"], vec![vec![0.0, -0.25], vec![1.0, 0.25]])
            .with_footer(vec![("argmax", 1.0), ("max", 0.25)]);
        assert_eq!(
            render(&r, Format::Csv),
            "x,loss\n0,-0.25\n1,0.25\n# {\"argmax\":1.0,\"max\":0.25}\n"
        );
        assert_eq!(
            render(&r, Format::Json),
            "{\"x\":[0.0,1.0],\"loss\":[-0.25,0.25],\"argmax\":1.0,\"max\":0.25}\n"
        );
    }

    #[test]
    fn record_and_values() {
        let r = Report::record(vec![
            ("ok", Field::Bool(true)),
            ("v", Field::Num(f64::INFINITY)),
            ("e", Field::Null),
        ]);
        assert_eq!(render(&r, Format::Csv), "ok,v,e\ntrue,inf,\n");
        assert_eq!(render(&r, Format::Json), "{\"ok\":true,\"v\":\"inf\",\"e\":null}\n");
        let v = Report::Values {
            name: "samples".into(),
            values: vec![1.5, -2.0],
        };
        assert_eq!(render(&v, Format::Csv), "1.5\n-2\n");
    }
}
