//! Generating functions for Arndt-Carlitz compositions.
//!
//! `F(z,u) = Σ_k a_k(z,u)` counts compositions with an even number `2k` of
//! parts, `z` marking the total and `u` the last part. Adding a slice gives
//!
//! ```text
//! a_{k+1}(z,u) = z³u/((1−z)(1−z²u))·a_k(z,1) − zu/(1−zu)·a_k(z,z) + a_k(z,z²u)/(1−zu)
//! ```
//!
//! and iterating the summed equation yields the linear system
//!
//! ```text
//! F(z,1) = α(z,1)(F(z,1)+1) + β(z,1)F(z,z)
//! F(z,z) = α(z,z)(F(z,1)+1) + β(z,z)F(z,z)
//! ```
//!
//! whose solution is the production route here. [`slice_iteration_series`]
//! runs the recurrence itself and serves as an independent cross-check.
//!
//! Odd part counts come from appending one part different from the last:
//! `z/(1−z) + F(z,1)·z/(1−z) − F(z,z)`, so `F(z,z)` is the even-length
//! generating function with the last part weighted twice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::composition::Parity;
use crate::error::Result;
use crate::series::{BivariateSeries, TruncatedSeries};

/// Which special value of `α(z,u)` / `β(z,u)` to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Specialization {
    /// `u = 1`
    AtOne,
    /// `u = z`
    AtZ,
}

impl Specialization {
    /// `z`-valuation of the k-th summand of α.
    pub fn alpha_term_valuation(self, k: usize) -> usize {
        match self {
            Specialization::AtOne => 2 * k + 1,
            Specialization::AtZ => 2 * k + 2,
        }
    }

    /// `z`-valuation of the k-th summand of β.
    pub fn beta_term_valuation(self, k: usize) -> usize {
        match self {
            Specialization::AtOne => 2 * k - 1,
            Specialization::AtZ => 2 * k,
        }
    }
}

fn z_pow(exp: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(BigRational::one(), exp, order)
}

/// k-th summand of α:
/// `z^{2k+1}/((1−z)(1−z^{2k})∏_{ℓ<k}(1−z^{2ℓ−1}))` at `u = 1`,
/// `z^{2k+2}/((1−z)(1−z^{2k+1})∏_{ℓ<k}(1−z^{2ℓ}))` at `u = z`.
fn alpha_term(variant: Specialization, k: usize, order: usize) -> TruncatedSeries {
    let shift = match variant {
        Specialization::AtOne => 0,
        Specialization::AtZ => 1,
    };
    let mut t = z_pow(variant.alpha_term_valuation(k), order)
        .div_one_minus_monomial(1)
        .div_one_minus_monomial(2 * k + shift);
    for l in 1..k {
        t = t.div_one_minus_monomial(2 * l - 1 + shift);
    }
    t
}

/// k-th summand of β (sign included):
/// `−z^{2k−1}/∏_{ℓ≤k}(1−z^{2ℓ−1})` at `u = 1`, `−z^{2k}/∏_{ℓ≤k}(1−z^{2ℓ})` at `u = z`.
fn beta_term(variant: Specialization, k: usize, order: usize) -> TruncatedSeries {
    let shift = match variant {
        Specialization::AtOne => 0,
        Specialization::AtZ => 1,
    };
    let mut t = -z_pow(variant.beta_term_valuation(k), order);
    for l in 1..=k {
        t = t.div_one_minus_monomial(2 * l - 1 + shift);
    }
    t
}

/// First `terms` summands of α, truncated at `order`.
pub fn alpha_partial_sum(variant: Specialization, order: usize, terms: usize) -> TruncatedSeries {
    (1..=terms).fold(TruncatedSeries::zero(order), |acc, k| {
        acc + alpha_term(variant, k, order)
    })
}

/// First `terms` summands of β, truncated at `order`.
pub fn beta_partial_sum(variant: Specialization, order: usize, terms: usize) -> TruncatedSeries {
    (1..=terms).fold(TruncatedSeries::zero(order), |acc, k| {
        acc + beta_term(variant, k, order)
    })
}

/// Number of α summands that can reach `z^order`.
pub fn alpha_terms_needed(variant: Specialization, order: usize) -> usize {
    (1..)
        .take_while(|&k| variant.alpha_term_valuation(k) <= order)
        .count()
}

/// Number of β summands that can reach `z^order`.
pub fn beta_terms_needed(variant: Specialization, order: usize) -> usize {
    (1..)
        .take_while(|&k| variant.beta_term_valuation(k) <= order)
        .count()
}

/// `α(z,1)` or `α(z,z)` to order `N`.
pub fn alpha_series(variant: Specialization, order: usize) -> TruncatedSeries {
    alpha_partial_sum(variant, order, alpha_terms_needed(variant, order))
}

/// `β(z,1)` or `β(z,z)` to order `N`; every coefficient is ≤ 0.
pub fn beta_series(variant: Specialization, order: usize) -> TruncatedSeries {
    beta_partial_sum(variant, order, beta_terms_needed(variant, order))
}

/// The four special values feeding the linear system.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaBeta {
    pub alpha_one: TruncatedSeries,
    pub alpha_z: TruncatedSeries,
    pub beta_one: TruncatedSeries,
    pub beta_z: TruncatedSeries,
}

impl AlphaBeta {
    pub fn compute(order: usize) -> Self {
        let ((alpha_one, alpha_z), (beta_one, beta_z)) = rayon::join(
            || {
                rayon::join(
                    || alpha_series(Specialization::AtOne, order),
                    || alpha_series(Specialization::AtZ, order),
                )
            },
            || {
                rayon::join(
                    || beta_series(Specialization::AtOne, order),
                    || beta_series(Specialization::AtZ, order),
                )
            },
        );
        Self {
            alpha_one,
            alpha_z,
            beta_one,
            beta_z,
        }
    }

    pub fn order(&self) -> usize {
        self.alpha_one.order()
    }

    /// `1 − α(z,1) − β(z,z) + β(z,z)α(z,1) − α(z,z)β(z,1)`.
    pub fn denominator(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.order()) - &self.alpha_one - &self.beta_z
            + &self.beta_z * &self.alpha_one
            - &self.alpha_z * &self.beta_one
    }

    /// `α(z,1) + α(z,z)β(z,1) − α(z,1)β(z,z)`.
    pub fn numerator(&self) -> TruncatedSeries {
        &self.alpha_one + &self.alpha_z * &self.beta_one - &self.alpha_one * &self.beta_z
    }

    /// What is left of both system equations after substituting
    /// `F(z,1)` and `F(z,z)`; both vanish for the true solution.
    pub fn residuals(
        &self,
        f_one: &TruncatedSeries,
        f_z: &TruncatedSeries,
    ) -> (TruncatedSeries, TruncatedSeries) {
        let f_one_plus_one = f_one + &TruncatedSeries::one(f_one.order());
        let first = f_one - &(&self.alpha_one * &f_one_plus_one) - &self.beta_one * f_z;
        let second = f_z - &(&self.alpha_z * &f_one_plus_one) - &self.beta_z * f_z;
        (first, second)
    }
}

/// `D(z)`, the common denominator of `F(z,1)` and `F(z,z)`.
pub fn denominator_series(order: usize) -> TruncatedSeries {
    AlphaBeta::compute(order).denominator()
}

/// `F(z,1)`: Arndt-Carlitz compositions with an even number of parts.
pub fn even_series(order: usize) -> Result<TruncatedSeries> {
    Ok(SeriesBundle::compute(order)?.even)
}

/// `F(z,z)`: even-length compositions with the last part counted twice.
pub fn fzz_series(order: usize) -> Result<TruncatedSeries> {
    Ok(SeriesBundle::compute(order)?.fzz)
}

/// `z/(1−z) + F(z,1)·z/(1−z) − F(z,z)`: odd number of parts.
pub fn odd_series(order: usize) -> Result<TruncatedSeries> {
    Ok(SeriesBundle::compute(order)?.odd)
}

/// Both parities together.
pub fn total_series(order: usize) -> Result<TruncatedSeries> {
    Ok(SeriesBundle::compute(order)?.total)
}

/// Odd-length series from `F(z,1)` and `F(z,z)`.
pub fn odd_from_even(even: &TruncatedSeries, fzz: &TruncatedSeries) -> TruncatedSeries {
    let order = even.order().min(fzz.order());
    // z/(1−z)·(1 + F(z,1))
    let attach = (even + &TruncatedSeries::one(order))
        .shift(1)
        .div_one_minus_monomial(1);
    attach - fzz
}

/// `a₁(z,u) = z³u/((1−z)(1−z²u))`, also the slice kernel.
pub fn first_slice(order: usize) -> BivariateSeries {
    BivariateSeries::monomial(BigRational::one(), 3, 1, order)
        .div_one_minus_monomial(1, 0)
        .div_one_minus_monomial(2, 1)
}

/// `a_{k+1}` from `a_k`.
pub fn next_slice(kernel: &BivariateSeries, a: &BivariateSeries) -> BivariateSeries {
    let attach_any = kernel.mul_univariate(&a.substitute_u_one());
    let drop_equal = BivariateSeries::from_univariate(&a.substitute_u_z()).mul_monomial(1, 1);
    attach_any + (a.substitute_u_z2u() - drop_equal).div_one_minus_monomial(1, 1)
}

/// The iterates `a₁, a₂, …` up to the last one with a term of `z`-degree
/// ≤ `order`. `a_k` has valuation `3k`, so there are `⌊order/3⌋` of them.
pub fn slice_iterates(order: usize) -> Vec<BivariateSeries> {
    let kernel = first_slice(order);
    let mut out = Vec::new();
    let mut a = kernel.clone();
    while !a.is_zero() {
        let next = next_slice(&kernel, &a);
        out.push(a);
        a = next;
    }
    out
}

/// `F(z,u) = Σ_k a_k(z,u)` by direct slice iteration.
pub fn slice_iteration_series(order: usize) -> BivariateSeries {
    slice_iterates(order)
        .into_iter()
        .fold(BivariateSeries::zero(order), |acc, a| acc + a)
}

/// `F(z,1)`, `F(z,z)`, the odd series and the total, all to one order and
/// all checked to have nonnegative integer coefficients (`F(z,z)` included).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesBundle {
    even: TruncatedSeries,
    fzz: TruncatedSeries,
    odd: TruncatedSeries,
    total: TruncatedSeries,
    counts: [Vec<BigInt>; 3],
}

impl SeriesBundle {
    /// Closed-form route: solve the α/β system.
    pub fn compute(order: usize) -> Result<Self> {
        let ab = AlphaBeta::compute(order);
        let inv = ab.denominator().reciprocal()?;
        let even = &ab.numerator() * &inv;
        let fzz = &ab.alpha_z * &inv;
        Self::from_even_fzz(even, fzz)
    }

    /// Slice-iteration route.
    pub fn from_slice_iteration(order: usize) -> Result<Self> {
        let f = slice_iteration_series(order);
        Self::from_even_fzz(f.substitute_u_one(), f.substitute_u_z())
    }

    fn from_even_fzz(even: TruncatedSeries, fzz: TruncatedSeries) -> Result<Self> {
        let odd = odd_from_even(&even, &fzz);
        let total = &even + &odd;
        fzz.to_counts("F(z,z)")?;
        let counts = [
            even.to_counts("F(z,1)")?,
            odd.to_counts("odd series")?,
            total.to_counts("total series")?,
        ];
        Ok(Self {
            even,
            fzz,
            odd,
            total,
            counts,
        })
    }

    pub fn order(&self) -> usize {
        self.even.order()
    }

    pub fn even(&self) -> &TruncatedSeries {
        &self.even
    }

    pub fn fzz(&self) -> &TruncatedSeries {
        &self.fzz
    }

    pub fn odd(&self) -> &TruncatedSeries {
        &self.odd
    }

    pub fn total(&self) -> &TruncatedSeries {
        &self.total
    }

    pub fn series(&self, parity: Parity) -> &TruncatedSeries {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
            Parity::All => &self.total,
        }
    }

    /// Integer coefficients `c₀ … c_N` of the chosen counting series.
    pub fn counts(&self, parity: Parity) -> &[BigInt] {
        match parity {
            Parity::Even => &self.counts[0],
            Parity::Odd => &self.counts[1],
            Parity::All => &self.counts[2],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{ToPrimitive, Zero};

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_integers("t")
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn alpha_low_order() {
        // k=1: z³/((1−z)(1−z²)) = z³+z⁴+2z⁵…, k=2: z⁵/((1−z)²(1−z⁴)) = z⁵…
        assert_eq!(
            ints(&alpha_series(Specialization::AtOne, 5)),
            [0, 0, 0, 1, 1, 3]
        );
        assert!(alpha_series(Specialization::AtOne, 2).is_zero());
        assert!(alpha_series(Specialization::AtZ, 3).is_zero());
        // u=z: z⁴/((1−z)(1−z³)) = z⁴+z⁵+z⁶+2z⁷…, plus z⁶/((1−z)(1−z²)(1−z⁵)) = z⁶+z⁷…
        assert_eq!(
            ints(&alpha_series(Specialization::AtZ, 7)),
            [0, 0, 0, 0, 1, 1, 2, 3]
        );
    }

    #[test]
    fn beta_low_order() {
        assert_eq!(
            ints(&beta_series(Specialization::AtOne, 3)),
            [0, -1, -1, -2]
        );
        assert!(beta_series(Specialization::AtOne, 0).is_zero());
        assert!(beta_series(Specialization::AtZ, 1).is_zero());
        let b = beta_series(Specialization::AtZ, 40);
        assert!(b.coeffs().iter().all(|c| *c <= BigRational::zero()));
    }

    #[test]
    fn extra_term_changes_nothing() {
        for order in [0, 1, 2, 5, 10, 17, 30] {
            for v in [Specialization::AtOne, Specialization::AtZ] {
                let ka = alpha_terms_needed(v, order);
                assert_eq!(alpha_series(v, order), alpha_partial_sum(v, order, ka + 1));
                let kb = beta_terms_needed(v, order);
                assert_eq!(beta_series(v, order), beta_partial_sum(v, order, kb + 1));
                // and the last needed term does contribute
                if ka > 0 {
                    assert_ne!(alpha_series(v, order), alpha_partial_sum(v, order, ka - 1));
                }
                if kb > 0 {
                    assert_ne!(beta_series(v, order), beta_partial_sum(v, order, kb - 1));
                }
            }
        }
    }

    #[test]
    fn denominator_low_terms() {
        let d = denominator_series(20);
        assert_eq!(d.coeff(0), BigRational::one());
        assert!(d.coeff(1).is_zero());
    }

    #[test]
    fn numerator_identity() {
        let ab = AlphaBeta::compute(30);
        let even = SeriesBundle::compute(30).unwrap().even().clone();
        assert_eq!(&ab.denominator() * &even, ab.numerator());
    }

    #[test]
    fn golden_series() {
        let b = SeriesBundle::compute(11).unwrap();
        assert_eq!(ints(b.even()), [0, 0, 0, 1, 1, 2, 3, 5, 7, 12, 20, 30]);
        assert_eq!(ints(b.odd()), [0, 1, 1, 1, 1, 2, 4, 5, 9, 15, 22, 36]);
        assert_eq!(b.total().coeff(7), BigRational::from_integer(10.into()));
        assert_eq!(b.total().coeff(8), BigRational::from_integer(16.into()));
        assert_eq!(b.total().coeff(1), BigRational::one());
        assert_eq!(ints(b.fzz())[..6], [0, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn order_zero() {
        let b = SeriesBundle::compute(0).unwrap();
        assert!(b.even().is_zero() && b.fzz().is_zero() && b.odd().is_zero());
    }

    #[test]
    fn first_slice_table() {
        // z³u·(1+z+z²+…)(1+z²u+…) up to z⁵
        let a1 = first_slice(5);
        let terms: Vec<_> = a1
            .terms()
            .map(|(p, q, c)| (p, q, c.to_i64().unwrap()))
            .collect();
        assert_eq!(terms, [(3, 1, 1), (4, 1, 1), (5, 1, 1), (5, 2, 1)]);
    }

    #[test]
    fn slice_valuations_are_3k() {
        let it = slice_iterates(30);
        assert_eq!(it.len(), 10);
        for (i, a) in it.iter().enumerate() {
            assert_eq!(a.z_valuation(), Some(3 * (i + 1)));
            assert!(a.terms().all(|(p, q, _)| q <= p));
        }
    }

    #[test]
    fn slice_route_agrees() {
        let closed = SeriesBundle::compute(24).unwrap();
        let slice = SeriesBundle::from_slice_iteration(24).unwrap();
        assert_eq!(closed, slice);
    }

    #[test]
    fn system_residual_vanishes() {
        let ab = AlphaBeta::compute(40);
        let b = SeriesBundle::compute(40).unwrap();
        let (r1, r2) = ab.residuals(b.even(), b.fzz());
        assert!(r1.is_zero() && r2.is_zero());
    }
}
