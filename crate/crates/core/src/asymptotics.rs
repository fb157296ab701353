//! Dominant pole and amplitude constants.
//!
//! `F(z,1)`, `F(z,z)` and the odd series share the denominator
//! `D(z) = 1 − α(z,1) − β(z,z) + β(z,z)α(z,1) − α(z,z)β(z,1)`. Its smallest
//! positive zero `ρ` is a simple pole of all three, so the counts grow like
//! `C·ρ⁻ⁿ` with `C = −N(ρ)/(ρ·D′(ρ))` for a numerator `N`.
//!
//! The `α`/`β` sums are evaluated directly at real `x ∈ (0,1)`, each term
//! together with its derivative, so `D′` comes out analytically.

use crate::composition::Parity;
use crate::error::{Error, Result};
use crate::gf::Specialization;
use crate::real::HighPrecisionReal;

/// Extra digits carried beyond what the caller asks for.
pub const GUARD_DIGITS: usize = 15;

/// Default requested precision; covers every published constant.
pub const DEFAULT_DIGITS: usize = 20;

/// Bracket searched for `ρ`.
pub const RHO_BRACKET: (&str, &str) = ("0.55", "0.70");

/// Growth rate of unrestricted compositions.
pub const UNRESTRICTED_GROWTH: &str = "2";

/// Growth rate of Carlitz compositions, as commonly quoted.
pub const CARLITZ_GROWTH: &str = "1.750243";

const MAX_TERMS: usize = 100_000;

/// How the infinite `k`-sums inside `α` and `β` are cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SumCutoff {
    /// Sum until the terms fall below the tolerance; the mathematically
    /// correct value.
    #[default]
    Converged,
    /// Keep exactly the first `k` terms of every sum. With `k = 20` this
    /// reproduces the constants commonly quoted for these compositions,
    /// which differ from the converged ones from the ninth digit on.
    Terms(usize),
}

type Real = HighPrecisionReal;

/// A value together with its first derivative in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub value: Real,
    pub slope: Real,
}

impl Jet {
    fn mul(&self, other: &Jet) -> Jet {
        Jet {
            value: &self.value * &other.value,
            slope: &self.slope * &other.value + &self.value * &other.slope,
        }
    }

    fn add(&self, other: &Jet) -> Jet {
        Jet {
            value: &self.value + &other.value,
            slope: &self.slope + &other.slope,
        }
    }

    fn sub(&self, other: &Jet) -> Jet {
        Jet {
            value: &self.value - &other.value,
            slope: &self.slope - &other.slope,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Alpha,
    Beta,
}

/// Cached powers `x⁰, x¹, …`.
struct Powers {
    pows: Vec<Real>,
}

impl Powers {
    fn new(x: &Real) -> Self {
        Self {
            pows: vec![Real::from_i64(1, x.digits()), x.clone()],
        }
    }

    fn get(&mut self, m: usize) -> &Real {
        while self.pows.len() <= m {
            let next = &self.pows[self.pows.len() - 1] * &self.pows[1];
            self.pows.push(next);
        }
        &self.pows[m]
    }
}

fn check_domain(x: &Real) -> Result<()> {
    let one = Real::from_i64(1, x.digits());
    if !x.is_positive() || *x >= one {
        Err(Error::Domain(x.to_string()))
    } else {
        Ok(())
    }
}

/// Sums one of the four special values as a `q`-series. The k-th term is
///
/// ```text
/// ± x^e / ( ∏_{ℓ ≤ m} (1 − x^{2ℓ−1+s}) · ∏ extras (1 − x^b) )
/// ```
///
/// with `s = 0` at `u = 1` and `s = 1` at `u = z`; α has `m = k − 1`,
/// `e = 2k+1+s` and extras `{1, 2k+s}`, β has `m = k`, `e = 2k−1+s` and
/// no extras. The derivative uses `d/dx ln(1/(1−x^b)) = b·x^{b−1}/(1−x^b)`.
fn q_sum(
    kind: Kind,
    variant: Specialization,
    x: &Real,
    tol: &Real,
    cutoff: SumCutoff,
) -> Result<Jet> {
    check_domain(x)?;
    let digits = x.digits().max(tol.digits());
    let x = x.with_digits(digits);
    let s = match variant {
        Specialization::AtOne => 0,
        Specialization::AtZ => 1,
    };
    let one = Real::from_i64(1, digits);
    let mut pw = Powers::new(&x);
    // stopping threshold tol·(1 − x²)
    let threshold = tol * &(&one - pw.get(2));

    // running ∏ 1/(1 − x^b) and its log-derivative
    let mut running = one.clone();
    let mut running_log_slope = Real::from_i64(0, digits);
    let push_factor = |pw: &mut Powers, b: usize, prod: &mut Real, log_slope: &mut Real| {
        let xb = pw.get(b).clone();
        let denom = &one - &xb;
        *prod = &*prod / &denom;
        let bx = Real::from_i64(b as i64, digits) * pw.get(b - 1);
        *log_slope = &*log_slope + &(bx / &denom);
    };

    let mut sum = Real::from_i64(0, digits);
    let mut slope = Real::from_i64(0, digits);
    let mut below = false;
    let max_terms = match cutoff {
        SumCutoff::Converged => MAX_TERMS,
        SumCutoff::Terms(k) => k,
    };
    for k in 1..=max_terms {
        let (exponent, extras): (usize, &[usize]) = match kind {
            Kind::Alpha => (2 * k + 1 + s, &[1, 2 * k + s]),
            Kind::Beta => (2 * k - 1 + s, &[]),
        };
        if kind == Kind::Beta {
            push_factor(&mut pw, 2 * k - 1 + s, &mut running, &mut running_log_slope);
        }
        let mut term = &running * pw.get(exponent);
        let mut log_slope = &running_log_slope + &(Real::from_i64(exponent as i64, digits) / &x);
        for &b in extras {
            push_factor(&mut pw, b, &mut term, &mut log_slope);
        }
        if kind == Kind::Alpha {
            // the product for term k+1 runs to ℓ = k
            push_factor(&mut pw, 2 * k - 1 + s, &mut running, &mut running_log_slope);
        }

        if below && cutoff == SumCutoff::Converged {
            // one extra term past the stopping point must itself be negligible
            if term.abs() >= *tol {
                return Err(Error::NoConvergence {
                    name: "q-series tail",
                    terms: k,
                });
            }
            break;
        }
        let term_slope = &term * &log_slope;
        sum = sum + &term;
        slope = slope + term_slope;
        if cutoff == SumCutoff::Converged && term.abs() < threshold {
            below = true;
        }
    }
    if !below && cutoff == SumCutoff::Converged {
        return Err(Error::NoConvergence {
            name: "q-series",
            terms: MAX_TERMS,
        });
    }
    Ok(match kind {
        Kind::Alpha => Jet { value: sum, slope },
        Kind::Beta => Jet {
            value: -sum,
            slope: -slope,
        },
    })
}

/// `α(x,1)` or `α(x,x)` with its derivative.
pub fn eval_alpha_jet(
    x: &Real,
    variant: Specialization,
    tol: &Real,
    cutoff: SumCutoff,
) -> Result<Jet> {
    q_sum(Kind::Alpha, variant, x, tol, cutoff)
}

/// `β(x,1)` or `β(x,x)` with its derivative.
pub fn eval_beta_jet(
    x: &Real,
    variant: Specialization,
    tol: &Real,
    cutoff: SumCutoff,
) -> Result<Jet> {
    q_sum(Kind::Beta, variant, x, tol, cutoff)
}

pub fn eval_alpha(x: &Real, variant: Specialization, tol: &Real) -> Result<Real> {
    Ok(eval_alpha_jet(x, variant, tol, SumCutoff::Converged)?.value)
}

/// Negative on `(0,1)`.
pub fn eval_beta(x: &Real, variant: Specialization, tol: &Real) -> Result<Real> {
    Ok(eval_beta_jet(x, variant, tol, SumCutoff::Converged)?.value)
}

/// All four special values at one point.
#[derive(Debug, Clone)]
pub struct SpecialValues {
    pub alpha_one: Jet,
    pub alpha_z: Jet,
    pub beta_one: Jet,
    pub beta_z: Jet,
}

impl SpecialValues {
    pub fn at(x: &Real, tol: &Real) -> Result<Self> {
        Self::at_with(x, tol, SumCutoff::Converged)
    }

    pub fn at_with(x: &Real, tol: &Real, cutoff: SumCutoff) -> Result<Self> {
        Ok(Self {
            alpha_one: eval_alpha_jet(x, Specialization::AtOne, tol, cutoff)?,
            alpha_z: eval_alpha_jet(x, Specialization::AtZ, tol, cutoff)?,
            beta_one: eval_beta_jet(x, Specialization::AtOne, tol, cutoff)?,
            beta_z: eval_beta_jet(x, Specialization::AtZ, tol, cutoff)?,
        })
    }

    /// `D = 1 − α₁ − β_z + β_z·α₁ − α_z·β₁`.
    pub fn denominator(&self) -> Jet {
        let digits = self.alpha_one.value.digits();
        let one = Jet {
            value: Real::from_i64(1, digits),
            slope: Real::from_i64(0, digits),
        };
        one.sub(&self.alpha_one)
            .sub(&self.beta_z)
            .add(&self.beta_z.mul(&self.alpha_one))
            .sub(&self.alpha_z.mul(&self.beta_one))
    }

    /// `N = α₁ + α_z·β₁ − α₁·β_z`, the numerator of `F(x,1)`.
    pub fn numerator(&self) -> Jet {
        self.alpha_one
            .add(&self.alpha_z.mul(&self.beta_one))
            .sub(&self.alpha_one.mul(&self.beta_z))
    }
}

/// `D(x)`; the error budget is five times `tol`.
pub fn eval_denominator(x: &Real, tol: &Real) -> Result<Real> {
    Ok(SpecialValues::at(x, tol)?.denominator().value)
}

/// `D′(x)` from the term-wise derivatives.
pub fn denominator_slope(x: &Real, tol: &Real) -> Result<Real> {
    Ok(SpecialValues::at(x, tol)?.denominator().slope)
}

/// `D′(x)` by a centred difference with step `10^(−digits/2)`, evaluated at
/// `2·digits` working precision.
pub fn denominator_slope_finite_difference(x: &Real, digits: usize) -> Result<Real> {
    let wp = 2 * digits;
    let x = x.with_digits(wp);
    let tol = Real::ten_to_minus(wp, wp);
    let h = Real::ten_to_minus(digits / 2, wp);
    let hi = eval_denominator(&(&x + &h), &tol)?;
    let lo = eval_denominator(&(&x - &h), &tol)?;
    Ok((hi - lo) / (Real::from_i64(2, wp) * h))
}

fn working_digits(digits: usize) -> Result<usize> {
    if digits < 10 {
        return Err(Error::Precision(format!(
            "at least 10 digits are required, got {digits}"
        )));
    }
    Ok(digits + GUARD_DIGITS)
}

/// Smallest positive zero of `D`, good to `digits` significant digits and
/// carried at `digits + GUARD_DIGITS`.
///
/// Bisects the fixed bracket to about ten digits, then switches to the
/// secant method at full working precision.
pub fn find_rho(digits: usize) -> Result<Real> {
    find_rho_with(digits, SumCutoff::Converged)
}

/// [`find_rho`] for a chosen [`SumCutoff`].
pub fn find_rho_with(digits: usize, cutoff: SumCutoff) -> Result<Real> {
    let wp = working_digits(digits)?;
    let tol = Real::ten_to_minus(wp, wp);
    let d = |x: &Real| Ok::<_, Error>(SpecialValues::at_with(x, &tol, cutoff)?.denominator().value);

    let mut lo = Real::parse(RHO_BRACKET.0, wp)?;
    let mut hi = Real::parse(RHO_BRACKET.1, wp)?;
    let mut d_lo = d(&lo)?;
    let d_hi = d(&hi)?;
    if d_lo.is_negative() == d_hi.is_negative() || d_lo.is_zero() || d_hi.is_zero() {
        return Err(Error::NoSignChange {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }

    let two = Real::from_i64(2, wp);
    let coarse = Real::ten_to_minus(10, wp);
    while &hi - &lo > coarse {
        let mid = (&lo + &hi) / &two;
        let d_mid = d(&mid)?;
        if d_mid.is_zero() {
            return Ok(mid);
        }
        if d_mid.is_negative() == d_lo.is_negative() {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }

    let step_tol = Real::ten_to_minus(wp - 2, wp);
    let (mut x0, mut x1) = (lo, hi);
    let mut f0 = d(&x0)?;
    let mut f1 = d(&x1)?;
    for _ in 0..100 {
        if f1.is_zero() || f1 == f0 {
            return Ok(x1);
        }
        let step = &f1 * &(&x1 - &x0) / (&f1 - &f0);
        let x2 = &x1 - &step;
        if step.abs() < step_tol {
            return Ok(x2);
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = d(&x1)?;
    }
    Err(Error::NoConvergence {
        name: "secant refinement",
        terms: 100,
    })
}

/// `ρ`, the growth rate `1/ρ` and the amplitudes of the even, odd and
/// total counting sequences.
#[derive(Debug, Clone)]
pub struct AsymptoticEstimate {
    pub rho: Real,
    pub growth: Real,
    pub c_even: Real,
    pub c_odd: Real,
    pub c_total: Real,
    /// Requested precision; values are carried with guard digits on top.
    pub precision_digits: usize,
}

impl AsymptoticEstimate {
    pub fn amplitude(&self, parity: Parity) -> &Real {
        match parity {
            Parity::Even => &self.c_even,
            Parity::Odd => &self.c_odd,
            Parity::All => &self.c_total,
        }
    }
}

/// Amplitudes at a root `rho` of `D`.
///
/// `c_even = −N(ρ)/(ρD′(ρ))`, the `F(z,z)` amplitude is `−α(ρ,ρ)/(ρD′(ρ))`
/// and the odd series contributes `ρ/(1−ρ)·c_even − c_fzz`.
pub fn amplitudes(rho: &Real, digits: usize) -> Result<AsymptoticEstimate> {
    amplitudes_with(rho, digits, SumCutoff::Converged)
}

/// [`amplitudes`] for a chosen [`SumCutoff`].
pub fn amplitudes_with(rho: &Real, digits: usize, cutoff: SumCutoff) -> Result<AsymptoticEstimate> {
    let wp = working_digits(digits)?;
    let rho = rho.with_digits(wp);
    let tol = Real::ten_to_minus(wp, wp);
    let sv = SpecialValues::at_with(&rho, &tol, cutoff)?;
    let den = sv.denominator();
    if den.value.abs() > Real::ten_to_minus(digits, wp) {
        return Err(Error::Precision(format!(
            "{rho} is not a zero of the denominator (D = {})",
            den.value
        )));
    }
    if den.slope.abs() < Real::ten_to_minus(wp / 2, wp) {
        return Err(Error::DegeneratePole);
    }
    let one = Real::from_i64(1, wp);
    let scale = -(&rho * &den.slope);
    let c_even = sv.numerator().value / &scale;
    let c_fzz = &sv.alpha_z.value / &scale;
    let c_odd = &rho / &(&one - &rho) * &c_even - c_fzz;
    let c_total = &c_even + &c_odd;
    Ok(AsymptoticEstimate {
        growth: &one / &rho,
        rho,
        c_even,
        c_odd,
        c_total,
        precision_digits: digits,
    })
}

/// [`find_rho`] followed by [`amplitudes`].
pub fn estimate(digits: usize) -> Result<AsymptoticEstimate> {
    estimate_with(digits, SumCutoff::Converged)
}

pub fn estimate_with(digits: usize, cutoff: SumCutoff) -> Result<AsymptoticEstimate> {
    let rho = find_rho_with(digits, cutoff)?;
    amplitudes_with(&rho, digits, cutoff)
}

/// `c_parity · (1/ρ)ⁿ`.
pub fn asymptotic_count(n: u64, est: &AsymptoticEstimate, parity: Parity) -> Real {
    est.amplitude(parity) * &est.growth.powi(n)
}
