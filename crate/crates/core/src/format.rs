//! Rendering of exact rationals and rational matrices.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::numeric::Rational;

/// Lowest-terms `p/q`; integers render as `p`.
pub fn plain(r: &Rational) -> String {
    r.to_string()
}

/// Lowest-terms `p/q` always carrying the denominator (`p/1` for integers).
pub fn with_denominator(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

/// Decimal rendering with `sig` significant digits, rounding half to even.
///
/// Plain notation is used for decimal exponents in `-6..21`, scientific otherwise.
pub fn decimal(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let num = r.numer().abs().to_biguint().expect("non-negative");
    let den = r.denom().to_biguint().expect("positive");

    // exponent e with 10^e <= num/den < 10^(e+1)
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    if less_than_power(&num, &den, exp) {
        exp -= 1;
    }
    let shift = sig as i64 - 1 - exp;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num * pow10(shift as u32), den)
    } else {
        (num, den * pow10((-shift) as u32))
    };
    let (mut digits, rem) = scaled_num.div_rem(&scaled_den);
    let twice = rem * 2u32;
    if twice > scaled_den || (twice == scaled_den && digits.is_odd()) {
        digits += 1u32;
    }
    if digits == pow10(sig as u32) {
        digits /= 10u32;
        exp += 1;
    }
    let ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig);

    let body = if (-6..21).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if int_len >= sig {
                format!("{}{}", ds, "0".repeat(int_len - sig))
            } else {
                format!("{}.{}", &ds[..int_len], &ds[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), ds)
        }
    } else if sig == 1 {
        format!("{}e{}", ds, exp)
    } else {
        format!("{}.{}e{}", &ds[..1], &ds[1..], exp)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

// num/den < 10^exp
fn less_than_power(num: &BigUint, den: &BigUint, exp: i64) -> bool {
    if exp >= 0 {
        *num < den * pow10(exp as u32)
    } else {
        num * pow10((-exp) as u32) < *den
    }
}

/// A labelled matrix of rationals, as emitted by the table commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    /// Header of the label column, e.g. `k` or `r`.
    pub corner: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub values: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.values[row][col]
    }

    /// CSV with a header row of column labels and a leading column of row labels.
    /// Entries are lowest-terms rational strings, or decimals when `decimal_digits` is set.
    pub fn to_csv(&self, decimal_digits: Option<usize>) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec![self.corner.clone()];
        header.extend(self.col_labels.iter().cloned());
        wtr.write_record(&header).expect("in-memory write");
        for (label, row) in self.row_labels.iter().zip(&self.values) {
            let mut record = vec![label.clone()];
            record.extend(row.iter().map(|r| match decimal_digits {
                Some(d) => decimal(r, d),
                None => plain(r),
            }));
            wtr.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_json(&self) -> Value {
        let values: Vec<Value> = self
            .values
            .iter()
            .map(|row| Value::Array(row.iter().map(rational_json).collect()))
            .collect();
        json!({
            "corner": self.corner,
            "rows": self.row_labels,
            "columns": self.col_labels,
            "values": values,
        })
    }

    /// Parses the CSV produced by [`RationalMatrix::to_csv`] with rational entries.
    pub fn from_csv(text: &str) -> crate::Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(text.as_bytes());
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| crate::Error::Parse("empty CSV".into()))?
            .map_err(|e| crate::Error::Parse(e.to_string()))?;
        let corner = header.get(0).unwrap_or_default().to_string();
        let col_labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut row_labels = Vec::new();
        let mut values = Vec::new();
        for rec in records {
            let rec = rec.map_err(|e| crate::Error::Parse(e.to_string()))?;
            row_labels.push(rec.get(0).unwrap_or_default().to_string());
            let row = rec
                .iter()
                .skip(1)
                .map(parse_rational)
                .collect::<crate::Result<Vec<_>>>()?;
            values.push(row);
        }
        Ok(RationalMatrix {
            corner,
            row_labels,
            col_labels,
            values,
        })
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Decimal rendering of a rational as an `f64`, for asymptotic comparisons only.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
