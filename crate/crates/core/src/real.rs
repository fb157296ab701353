//! Decimal floating point with an explicit working precision.
//!
//! A thin wrapper over [`dashu_float::DBig`]. Every constructor takes the
//! number of significant decimal digits; binary operations carry the larger
//! precision of their operands, so nothing silently drops to `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::DBig;
use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct HighPrecisionReal {
    value: DBig,
}

impl HighPrecisionReal {
    fn wrap(value: DBig) -> Self {
        Self { value }
    }

    pub fn parse(s: &str, digits: usize) -> Result<Self> {
        check_digits(digits)?;
        let value =
            DBig::from_str(s.trim()).map_err(|e| Error::Precision(format!("{s:?}: {e}")))?;
        Ok(Self::wrap(value.with_precision(digits).value()))
    }

    pub fn from_i64(v: i64, digits: usize) -> Self {
        Self::wrap(DBig::from(v).with_precision(digits.max(1)).value())
    }

    pub fn from_bigint(v: &BigInt, digits: usize) -> Self {
        let value = DBig::from_str(&v.to_string()).expect("integer literal");
        Self::wrap(value.with_precision(digits.max(1)).value())
    }

    /// `10^(−exp)`.
    pub fn ten_to_minus(exp: usize, digits: usize) -> Self {
        let exp = isize::try_from(exp).expect("exponent fits isize");
        Self::wrap(
            DBig::from_parts(1.into(), -exp)
                .with_precision(digits.max(1))
                .value(),
        )
    }

    /// Working precision in significant decimal digits.
    pub fn digits(&self) -> usize {
        self.value.precision()
    }

    pub fn as_dbig(&self) -> &DBig {
        &self.value
    }

    /// Same value carried at a different precision (rounded when lowering).
    pub fn with_digits(&self, digits: usize) -> Self {
        Self::wrap(self.value.clone().with_precision(digits.max(1)).value())
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().value()
    }

    pub fn is_negative(&self) -> bool {
        self.value < DBig::ZERO
    }

    pub fn is_positive(&self) -> bool {
        self.value > DBig::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.value == DBig::ZERO
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn powi(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_i64(1, self.digits());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Decimal rendering rounded to `digits` significant digits.
    /// Trailing zeros are kept, so the output always shows `digits` of them.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let mut s = self.with_digits(digits).to_string();
        let shown = significant_digits(&s).len();
        if shown > 0 && shown < digits {
            if !s.contains('.') {
                s.push('.');
            }
            s.extend(std::iter::repeat_n('0', digits - shown));
        }
        s
    }

    /// Scientific rendering `d.ddde±x` with `digits` significant digits.
    pub fn to_scientific(&self, digits: usize) -> String {
        let s = self.with_digits(digits).to_string();
        let sig = significant_digits(&s);
        if sig.is_empty() {
            return "0".into();
        }
        let unsigned = s.trim_start_matches('-');
        let int_len = unsigned.find('.').unwrap_or(unsigned.len()) as i64;
        let exp = if unsigned.starts_with('0') {
            let frac = &unsigned[int_len as usize + 1..];
            -((frac.len() - frac.trim_start_matches('0').len()) as i64) - 1
        } else {
            int_len - 1
        };
        let mut mantissa: String = sig.chars().take(digits).collect();
        while mantissa.len() < digits {
            mantissa.push('0');
        }
        let (head, tail) = mantissa.split_at(1);
        let sign = if self.is_negative() { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

/// Digits of a positional decimal string from the first nonzero one on.
fn significant_digits(s: &str) -> String {
    s.chars()
        .filter(char::is_ascii_digit)
        .skip_while(|&c| c == '0')
        .collect()
}

fn check_digits(digits: usize) -> Result<()> {
    if digits == 0 {
        Err(Error::Precision(
            "precision must be at least one digit".into(),
        ))
    } else {
        Ok(())
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl PartialOrd for HighPrecisionReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&HighPrecisionReal> for &HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $method(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
                HighPrecisionReal::wrap(&self.value $op &rhs.value)
            }
        }
        impl $tr<HighPrecisionReal> for HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $method(self, rhs: HighPrecisionReal) -> HighPrecisionReal {
                HighPrecisionReal::wrap(self.value $op rhs.value)
            }
        }
        impl $tr<&HighPrecisionReal> for HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $method(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
                HighPrecisionReal::wrap(self.value $op &rhs.value)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn neg(self) -> HighPrecisionReal {
        HighPrecisionReal::wrap(-self.value.clone())
    }
}

impl Neg for HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn neg(self) -> HighPrecisionReal {
        HighPrecisionReal::wrap(-self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_propagates() {
        let a = HighPrecisionReal::from_i64(1, 40);
        let b = HighPrecisionReal::from_i64(3, 40);
        let third = &a / &b;
        assert_eq!(third.digits(), 40);
        assert_eq!(third.to_string(), format!("0.{}", "3".repeat(40)));
        let coarse = HighPrecisionReal::parse("0.5", 10).unwrap();
        assert_eq!((&third * &coarse).digits(), 40);
    }

    #[test]
    fn rounding_to_digits() {
        let x = HighPrecisionReal::parse("1.5926077261744390123", 30).unwrap();
        assert_eq!(x.to_string_digits(15), "1.59260772617444");
        assert_eq!(x.to_string_digits(5), "1.5926");
        let y = HighPrecisionReal::parse("1.59260772923814156404", 30).unwrap();
        assert_eq!(y.to_string_digits(20), "1.5926077292381415640");
        assert_eq!(
            HighPrecisionReal::from_i64(16, 30).to_string_digits(4),
            "16.00"
        );
        assert_eq!(HighPrecisionReal::from_i64(0, 30).to_string_digits(4), "0");
    }

    #[test]
    fn scientific() {
        let p = |s| HighPrecisionReal::parse(s, 40).unwrap();
        assert_eq!(
            p("0.000000000000000000000000000000000312").to_scientific(3),
            "3.12e-34"
        );
        assert_eq!(p("-2.2867244506626772e-8").to_scientific(5), "-2.2867e-8");
        assert_eq!(p("0.0005742").to_scientific(3), "5.74e-4");
        assert_eq!(p("1234.5").to_scientific(2), "1.2e3");
        assert_eq!(p("7").to_scientific(1), "7e0");
        assert_eq!(p("0").to_scientific(3), "0");
    }

    #[test]
    fn powers_and_signs() {
        let half = HighPrecisionReal::parse("0.5", 30).unwrap();
        assert_eq!(half.powi(3).to_f64(), 0.125);
        assert_eq!(half.powi(0).to_f64(), 1.0);
        assert!((-&half).is_negative());
        assert_eq!((-&half).abs(), half);
        assert!(HighPrecisionReal::ten_to_minus(25, 30) < half);
        assert!(HighPrecisionReal::parse("x", 10).is_err());
        assert!(HighPrecisionReal::parse("1", 0).is_err());
    }

    #[test]
    fn big_integers() {
        let v: BigInt = "123456789012345678901234567890".parse().unwrap();
        let r = HighPrecisionReal::from_bigint(&v, 40);
        assert_eq!(r.to_string(), "123456789012345678901234567890");
    }
}
