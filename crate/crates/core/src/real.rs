//! High-precision reals for the asymptotic formulas.
//!
//! Backed by `astro-float` at 256 bits of mantissa (about 77 significant
//! decimal digits). Exact integers enter through their decimal expansion, so
//! no machine float is involved until [`Real::to_f64`].

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;

use crate::numeric::Rational;

pub const PRECISION_BITS: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn from_u64(v: u64) -> Self {
        Real(BigFloat::from_u64(v, PRECISION_BITS))
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        let mut cc = consts();
        Real(BigFloat::parse(
            &v.to_string(),
            Radix::Dec,
            PRECISION_BITS,
            RM,
            &mut cc,
        ))
    }

    pub fn from_rational(r: &Rational) -> Self {
        let mut cc = consts();
        let num = BigFloat::parse(
            &r.numer().to_string(),
            Radix::Dec,
            PRECISION_BITS,
            RM,
            &mut cc,
        );
        let den = BigFloat::parse(
            &r.denom().to_string(),
            Radix::Dec,
            PRECISION_BITS,
            RM,
            &mut cc,
        );
        Real(num.div(&den, PRECISION_BITS, RM))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(PRECISION_BITS, RM))
    }

    pub fn exp(&self) -> Self {
        let mut cc = consts();
        Real(self.0.exp(PRECISION_BITS, RM, &mut cc))
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, PRECISION_BITS, RM))
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn neg(&self) -> Self {
        Real(self.0.neg())
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    /// `|self / exact - 1|`.
    pub fn relative_error(&self, exact: &BigUint) -> Real {
        let ratio = self / &Real::from_biguint(exact);
        (&ratio - &Real::from_u64(1)).abs()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cc = consts();
        match self.0.format(Radix::Dec, RM, &mut cc) {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str("NaN"),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(self.0.$method(&rhs.0, PRECISION_BITS, RM))
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational_u;

    #[test]
    fn basic_arithmetic() {
        let two = Real::from_u64(2);
        let s = two.sqrt();
        assert!(((&s * &s).to_f64() - 2.0).abs() < 1e-15);
        assert!((Real::from_u64(1).exp().to_f64() - std::f64::consts::E).abs() < 1e-15);
        assert!((Real::from_rational(&rational_u(1, 3)).to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn precision_beyond_f64() {
        // (1 + 2^-100) - 1 survives at 256 bits
        let big = BigUint::from(1u32) << 100;
        let x = Real::from_biguint(&(&big + 1u32));
        let y = Real::from_biguint(&big);
        let diff = &(&x / &y) - &Real::from_u64(1);
        let expect = 2f64.powi(-100);
        assert!((diff.to_f64() / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn huge_integers() {
        let v = BigUint::from(10u32).pow(500);
        let r = Real::from_biguint(&v).relative_error(&v);
        assert!(r.to_f64().abs() < 1e-60);
    }
}
