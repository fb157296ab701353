//! Truncated formal power series with exact rational coefficients.
//!
//! [`TruncatedSeries`] holds `c₀ + c₁z + … + c_N z^N`; [`BivariateSeries`]
//! holds a dense `(N+1)×(N+1)` table of coefficients of `z^p u^q`. Both are
//! immutable values: every operation returns a fresh series truncated at the
//! operands' common order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `Σ_{n≤N} cₙ zⁿ` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// `c·z^exp`, or zero when `exp > order`.
    pub fn monomial(c: BigRational, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Takes coefficients `c₀, c₁, …`; missing ones are zero and extra ones
    /// are dropped.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = BigRational>, order: usize) -> Self {
        let mut coeffs: Vec<_> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())),
            order,
        )
    }

    /// `1/(1 − z^a)`: ones at exponents `0, a, 2a, …`.
    ///
    /// # Panics
    /// If `a == 0`.
    pub fn geometric(a: usize, order: usize) -> Self {
        assert!(a >= 1, "geometric series needs a positive step");
        let mut s = Self::zero(order);
        for n in (0..=order).step_by(a) {
            s.coeffs[n] = BigRational::one();
        }
        s
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `zⁿ`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the lowest nonzero term, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops terms above `order` (or pads with zeros when `order` is larger).
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().cloned(), order)
    }

    /// `z^d · self`.
    pub fn shift(&self, d: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for n in d..=order {
            out.coeffs[n] = self.coeffs[n - d].clone();
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self / (1 − z^a)` in linear time: `bₙ = aₙ + b_{n−a}`.
    ///
    /// # Panics
    /// If `a == 0`.
    pub fn div_one_minus_monomial(&self, a: usize) -> Self {
        assert!(a >= 1, "1 - z^0 is not invertible");
        let mut out = self.clone();
        for n in a..out.coeffs.len() {
            let prev = out.coeffs[n - a].clone();
            out.coeffs[n] += prev;
        }
        out
    }

    /// The series `b` with `self · b = 1` up to the order.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut b = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[n - k];
                }
            }
            b.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: b })
    }

    /// Checks every coefficient is an integer and returns them.
    pub fn to_integers(&self, name: &'static str) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NotIntegral {
                        series: name,
                        index,
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }

    /// Integer coefficients that must also be nonnegative (counting series).
    pub fn to_counts(&self, name: &'static str) -> Result<Vec<BigInt>> {
        let ints = self.to_integers(name)?;
        if let Some((index, value)) = ints.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::Negative {
                series: name,
                index,
                value: value.to_string(),
            });
        }
        Ok(ints)
    }

    /// Evaluates at a machine float; for quick sanity checks only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|n| f(&self.coeffs[n], &other.coeffs[n]))
                .collect(),
        }
    }

    fn cauchy(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            match n {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{n}")?,
                _ => write!(f, "{mag}*z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $method:ident, $body:expr) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $body(self, rhs)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $body(&self, &rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $body(&self, rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(TruncatedSeries, Add, add, |a: &TruncatedSeries, b| a
    .zip_with(b, |x, y| x + y));
forward_binop!(TruncatedSeries, Sub, sub, |a: &TruncatedSeries, b| a
    .zip_with(b, |x, y| x - y));
forward_binop!(TruncatedSeries, Mul, mul, |a: &TruncatedSeries, b| a
    .cauchy(b));

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

/// `Σ c_{p,q} z^p u^q` with `p, q ≤ N`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivariateSeries {
    order: usize,
    // row-major by z-power
    coeffs: Vec<BigRational>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigRational::zero(); (order + 1) * (order + 1)],
        }
    }

    /// `c·z^p·u^q`, or zero when either exponent exceeds the order.
    pub fn monomial(c: BigRational, p: usize, q: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if p <= order && q <= order {
            *s.at_mut(p, q) = c;
        }
        s
    }

    /// A series in `z` alone, placed in the `u⁰` column.
    pub fn from_univariate(a: &TruncatedSeries) -> Self {
        let mut s = Self::zero(a.order());
        for (p, c) in a.coeffs().iter().enumerate() {
            *s.at_mut(p, 0) = c.clone();
        }
        s
    }

    /// `1/(1 − z^a u^b)`.
    pub fn geometric(a: usize, b: usize, order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, 0, order).div_one_minus_monomial(a, b)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn idx(&self, p: usize, q: usize) -> usize {
        p * (self.order + 1) + q
    }

    fn at_mut(&mut self, p: usize, q: usize) -> &mut BigRational {
        let i = self.idx(p, q);
        &mut self.coeffs[i]
    }

    /// Coefficient of `z^p u^q`; zero outside the stored range.
    pub fn coeff(&self, p: usize, q: usize) -> BigRational {
        if p > self.order || q > self.order {
            BigRational::zero()
        } else {
            self.coeffs[self.idx(p, q)].clone()
        }
    }

    /// Nonzero entries as `(p, q, coefficient)`, ordered by `p` then `q`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        let w = self.order + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / w, i % w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest `z`-exponent carrying a nonzero coefficient.
    pub fn z_valuation(&self) -> Option<usize> {
        self.terms().map(|(p, _, _)| p).next()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(order);
        for (p, q, c) in self.terms() {
            if p <= order && q <= order {
                *out.at_mut(p, q) = c.clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `z^a u^b · self`.
    pub fn mul_monomial(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (p, q, c) in self.terms() {
            if p + a <= self.order && q + b <= self.order {
                *out.at_mut(p + a, q + b) = c.clone();
            }
        }
        out
    }

    /// Product with a series in `z` alone.
    pub fn mul_univariate(&self, a: &TruncatedSeries) -> Self {
        let order = self.order.min(a.order());
        let mut out = Self::zero(order);
        for (p, q, c) in self.terms() {
            if p > order || q > order {
                continue;
            }
            for (i, x) in a.coeffs().iter().enumerate().take(order + 1 - p) {
                if !x.is_zero() {
                    *out.at_mut(p + i, q) += c * x;
                }
            }
        }
        out
    }

    /// `self / (1 − z^a u^b)` via the in-place recurrence
    /// `c_{p,q} += c_{p−a,q−b}`.
    ///
    /// # Panics
    /// If `a == b == 0`.
    pub fn div_one_minus_monomial(&self, a: usize, b: usize) -> Self {
        assert!(a + b >= 1, "1 - z^0 u^0 is not invertible");
        let mut out = self.clone();
        for p in a..=self.order {
            for q in b..=self.order {
                let prev = out.coeffs[out.idx(p - a, q - b)].clone();
                if !prev.is_zero() {
                    *out.at_mut(p, q) += prev;
                }
            }
        }
        out
    }

    /// `u → 1`: sums each row into a series in `z`.
    pub fn substitute_u_one(&self) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.order);
        for (p, _, c) in self.terms() {
            out.coeffs[p] += c;
        }
        out
    }

    /// `u → z`: `z^p u^q ↦ z^{p+q}`.
    pub fn substitute_u_z(&self) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.order);
        for (p, q, c) in self.terms() {
            if p + q <= self.order {
                out.coeffs[p + q] += c;
            }
        }
        out
    }

    /// `u → z²u`: `z^p u^q ↦ z^{p+2q} u^q`.
    pub fn substitute_u_z2u(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (p, q, c) in self.terms() {
            if p + 2 * q <= self.order {
                *out.at_mut(p + 2 * q, q) += c;
            }
        }
        out
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for p in 0..=order {
            for q in 0..=order {
                *out.at_mut(p, q) = f(&self.coeffs[self.idx(p, q)], &other.coeffs[other.idx(p, q)]);
            }
        }
        out
    }

    /// Full bivariate product; `O(N⁴)`, meant for small orders.
    fn product(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        let rhs: Vec<_> = other.terms().collect();
        for (p, q, c) in self.terms() {
            for &(r, s, d) in &rhs {
                if p + r <= order && q + s <= order {
                    *out.at_mut(p + r, q + s) += c * d;
                }
            }
        }
        out
    }
}

forward_binop!(BivariateSeries, Add, add, |a: &BivariateSeries, b| a
    .zip_with(b, |x, y| x + y));
forward_binop!(BivariateSeries, Sub, sub, |a: &BivariateSeries, b| a
    .zip_with(b, |x, y| x - y));
forward_binop!(BivariateSeries, Mul, mul, |a: &BivariateSeries, b| a
    .product(b));

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;
    fn neg(self) -> BivariateSeries {
        self.scale(&-BigRational::one())
    }
}
