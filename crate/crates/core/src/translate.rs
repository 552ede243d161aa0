//! Transfer of a single singular term `(1 − t/t₀)^(−α)` to coefficient
//! asymptotics:
//!
//! ```text
//! C(n+α−1, n) = n^(α−1)/Γ(α) · (1 + Σ_{j≥1} e_j(α)·n^(−j))
//! ```
//!
//! The `e_j(α)` come from
//! `ln Γ(n+α) − ln Γ(n+1) − (α−1)·ln n = Σ_k (−1)^(k+1)·(B_{k+1}(α) − B_{k+1}(1))/(k(k+1)·n^k)`
//! exponentiated as a formal series in `1/n`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{rat, QuadExt, RadicalScalar, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationCoeffs {
    pub alpha: Rational,
    /// `e_1..=e_J`.
    pub coeffs: Vec<Rational>,
}

impl TranslationCoeffs {
    /// `e_j`, with `e_0 = 1` and zero past the computed order.
    pub fn get(&self, j: usize) -> Rational {
        match j {
            0 => Rational::one(),
            _ => self.coeffs.get(j - 1).cloned().unwrap_or_else(Rational::zero),
        }
    }
}

/// `B_0..=B_m` with `B_1 = −1/2`.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for k in 1..=m {
        // Σ_{i=0}^{k} C(k+1, i)·B_i = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (i, bi) in b.iter().enumerate() {
            acc += bi * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(k + 1 - i) / BigInt::from(i + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// `B_m(x) = Σ_k C(m,k)·B_k·x^(m−k)`.
fn bernoulli_poly(m: usize, x: &Rational, numbers: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    let mut binom = BigInt::one();
    for (k, bk) in numbers.iter().enumerate().take(m + 1) {
        let mut xp = Rational::one();
        for _ in 0..(m - k) {
            xp *= x;
        }
        acc += bk * Rational::from_integer(binom.clone()) * xp;
        binom = binom * BigInt::from(m - k) / BigInt::from(k + 1);
    }
    acc
}

fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Generates `e_1(α)..=e_J(α)` exactly.
pub fn binom_asym_coeffs(alpha: &Rational, order: usize) -> Result<TranslationCoeffs> {
    if is_nonpositive_integer(alpha) {
        return Err(Error::NonpositiveIntegerAlpha(alpha.clone()));
    }
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let numbers = bernoulli_numbers(order + 1);
    let one = Rational::one();
    // log-series coefficients L_1..L_J
    let logs: Vec<Rational> = (1..=order)
        .map(|k| {
            let diff = bernoulli_poly(k + 1, alpha, &numbers) - bernoulli_poly(k + 1, &one, &numbers);
            let sign = if k % 2 == 1 { one.clone() } else { -one.clone() };
            sign * diff / Rational::from_integer(BigInt::from(k * (k + 1)))
        })
        .collect();
    // E = exp(L): m·E_m = Σ_{k=1}^{m} k·L_k·E_{m−k}
    let mut e: Vec<Rational> = vec![one.clone()];
    for m in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=m {
            acc += Rational::from_integer(k.into()) * &logs[k - 1] * &e[m - k];
        }
        e.push(acc / Rational::from_integer(m.into()));
    }
    e.remove(0);
    Ok(TranslationCoeffs {
        alpha: alpha.clone(),
        coeffs: e,
    })
}

/// `r` with `Γ(α) = r·√π`, for `α = k + 1/2`.
pub fn gamma_half_integer(alpha: &Rational) -> Result<Rational> {
    if *alpha.denom() != BigInt::from(2) {
        return Err(Error::NotHalfInteger(alpha.clone()));
    }
    let half = rat(1, 2);
    let k = (alpha - &half).to_integer().to_i64().expect("moderate alpha");
    let mut r = Rational::one();
    if k > 0 {
        for j in 0..k {
            r *= &half + Rational::from_integer(j.into());
        }
    } else {
        for j in 1..=(-k) {
            r /= &half - Rational::from_integer(j.into());
        }
    }
    Ok(r)
}

/// Exact `1/Γ(α)` as `(rational, power of π)`; supports half-integers and
/// positive integers.
pub fn reciprocal_gamma(alpha: &Rational) -> Result<(Rational, Rational)> {
    if is_nonpositive_integer(alpha) {
        return Err(Error::NonpositiveIntegerAlpha(alpha.clone()));
    }
    if alpha.is_integer() {
        let k = alpha.to_integer().to_u64().expect("moderate alpha");
        let fact: BigInt = (1..k).map(BigInt::from).product();
        return Ok((Rational::new(BigInt::one(), fact), Rational::zero()));
    }
    Ok((gamma_half_integer(alpha)?.recip(), rat(-1, 2)))
}

/// One translated singular term:
/// `growth^n · n^n_exponent · prefactor · scalar · π^pi_power · (1 + Σ e_j n^(−j))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermTranslation {
    pub growth: QuadExt,
    pub n_exponent: Rational,
    pub prefactor: RadicalScalar,
    pub scalar: QuadExt,
    pub pi_power: Rational,
    pub corrections: Vec<Rational>,
}

impl TermTranslation {
    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }
}

/// Translates `prefactor · coeff · (1 − t/t₀)^(−α)` with `growth = 1/t₀`,
/// keeping `order` correction terms.
pub fn translate_term(
    prefactor: &RadicalScalar,
    coeff: &QuadExt,
    alpha: &Rational,
    growth: &QuadExt,
    order: usize,
) -> Result<TermTranslation> {
    let (inv_gamma, pi_power) = reciprocal_gamma(alpha)?;
    let corrections = if order == 0 {
        Vec::new()
    } else {
        binom_asym_coeffs(alpha, order)?.coeffs
    };
    Ok(TermTranslation {
        growth: growth.clone(),
        n_exponent: alpha - Rational::one(),
        prefactor: prefactor.clone(),
        scalar: coeff.scale(&inv_gamma),
        pi_power,
        corrections,
    })
}
