use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use ytab_core::format::{decimal, plain, with_denominator, RationalMatrix};
use ytab_core::Rational;

/// Significant digits for decimal renderings.
pub const DECIMAL_DIGITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Decimal,
    Csv,
}

/// JSON rendering of an exact value: always `p/q`, `p/1` for integers.
pub fn exact_string(r: &Rational) -> String {
    with_denominator(r)
}

pub struct Envelope {
    command: &'static str,
    params: Value,
    value: Value,
    plain: String,
    decimal: Option<String>,
    seed: Option<u64>,
}

impl Envelope {
    pub fn rational(command: &'static str, params: Value, r: Rational) -> Self {
        Envelope {
            command,
            params,
            value: json!(exact_string(&r)),
            plain: plain(&r),
            decimal: Some(decimal(&r, DECIMAL_DIGITS)),
            seed: None,
        }
    }

    pub fn integer(command: &'static str, params: Value, n: BigUint) -> Self {
        let r = Rational::from_integer(n.into());
        Self::rational(command, params, r)
    }

    pub fn float(command: &'static str, params: Value, x: f64) -> Self {
        Envelope {
            command,
            params,
            value: json!(x),
            plain: format!("{x:.10}"),
            decimal: None,
            seed: None,
        }
    }

    pub fn json(command: &'static str, params: Value, value: Value, seed: Option<u64>) -> Self {
        let plain = serde_json::to_string_pretty(&value).expect("serialisable");
        Envelope {
            command,
            params,
            value,
            plain,
            decimal: None,
            seed,
        }
    }

    pub fn render(&self, format: Format, with_decimal: bool) -> String {
        match format {
            Format::Plain | Format::Csv => format!("{}\n", self.plain),
            Format::Decimal => format!("{}\n", self.decimal.as_deref().unwrap_or(&self.plain)),
            Format::Json => {
                let extra = if with_decimal {
                    self.decimal.clone().map(Value::String)
                } else {
                    None
                };
                envelope(
                    self.command,
                    &self.params,
                    self.value.clone(),
                    extra,
                    self.seed,
                )
            }
        }
    }
}

fn envelope(
    command: &str,
    params: &Value,
    value: Value,
    decimal: Option<Value>,
    seed: Option<u64>,
) -> String {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("params".into(), params.clone());
    m.insert("value".into(), value);
    if let Some(d) = decimal {
        m.insert("decimal".into(), d);
    }
    if let Some(s) = seed {
        m.insert("seed".into(), json!(s));
    }
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    format!(
        "{}\n",
        serde_json::to_string_pretty(&Value::Object(m)).expect("serialisable")
    )
}

pub fn render_matrix(
    command: &str,
    params: Value,
    m: &RationalMatrix,
    format: Format,
    with_decimal: bool,
) -> String {
    match format {
        Format::Csv | Format::Plain => m.to_csv(None),
        Format::Decimal => m.to_csv(Some(DECIMAL_DIGITS)),
        Format::Json => {
            let extra = with_decimal.then(|| {
                m.values
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|r| json!(decimal(r, DECIMAL_DIGITS)))
                            .collect::<Value>()
                    })
                    .collect::<Value>()
            });
            envelope(command, &params, m.to_json(), extra, None)
        }
    }
}

/// Triangular table: one row per `n`, columns `k = 1..=n_max`, blank where `k > n`.
pub fn render_f12_table(rows: &[(usize, Vec<String>)], n_max: usize, format: Format) -> String {
    match format {
        Format::Json => {
            let value: Vec<Value> = rows
                .iter()
                .map(|(n, counts)| {
                    json!({"n": n, "values": counts.iter().map(|c| format!("{c}/1")).collect::<Vec<_>>()})
                })
                .collect();
            envelope(
                "exact f12",
                &json!({"table": true, "n_max": n_max}),
                json!(value),
                None,
                None,
            )
        }
        _ => {
            let mut out = String::from("n");
            for k in 1..=n_max {
                out += &format!(",{k}");
            }
            out.push('\n');
            for (n, counts) in rows {
                out += &n.to_string();
                for k in 1..=n_max {
                    out.push(',');
                    if let Some(c) = counts.get(k - 1) {
                        out += c;
                    }
                }
                out.push('\n');
            }
            out
        }
    }
}
