use std::fmt;

use num_traits::{One, Zero};

use super::quad::QuadExt;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A truncated power series `Σ a_k u^k` over `Q(sqrt c)`.
///
/// Coefficients at index `>= order` are unknown, not zero; `coeffs` always
/// has exactly `order` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<QuadExt>,
    order: usize,
    radicand: Rational,
}

impl PowerSeries {
    /// Builds a series known to `order`, padding or cutting `coeffs`.
    pub fn new(mut coeffs: Vec<QuadExt>, order: usize, radicand: &Rational) -> Result<Self> {
        let zero = QuadExt::zero(radicand);
        for c in &coeffs {
            c.check_field(&zero)?;
        }
        coeffs.resize(order, zero);
        Ok(Self {
            coeffs,
            order,
            radicand: radicand.clone(),
        })
    }

    /// Series with rational coefficients.
    pub fn from_rationals(coeffs: &[Rational], order: usize, radicand: &Rational) -> Self {
        let cs = coeffs
            .iter()
            .map(|x| QuadExt::rational(x.clone(), radicand))
            .collect();
        Self::new(cs, order, radicand).expect("coefficients built in the same field")
    }

    pub fn one(order: usize, radicand: &Rational) -> Self {
        Self::from_rationals(&[Rational::one()], order, radicand)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&QuadExt> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            coeffs: self.coeffs[..order].to_vec(),
            order,
            radicand: self.radicand.clone(),
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.radicand == other.radicand {
            Ok(())
        } else {
            Err(Error::RadicandMismatch {
                left: Box::new(self.radicand.clone()),
                right: Box::new(other.radicand.clone()),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let order = self.order.min(other.order);
        let coeffs = (0..order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        Self::new(coeffs, order, &self.radicand)
    }

    /// Cauchy product, known to the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let order = self.order.min(other.order);
        let mut out = vec![QuadExt::zero(&self.radicand); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_rational() && a.p().is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out, order, &self.radicand)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let a0 = match self.coeffs.first() {
            Some(a0) => a0,
            None => return Ok(self.clone()),
        };
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let y0 = a0.inv()?;
        let mut y: Vec<QuadExt> = Vec::with_capacity(self.order);
        y.push(y0.clone());
        for k in 1..self.order {
            let mut acc = QuadExt::zero(&self.radicand);
            for i in 1..=k {
                let a = &self.coeffs[i];
                if a.is_rational() && a.p().is_zero() {
                    continue;
                }
                acc = &acc + &(a * &y[k - i]);
            }
            y.push(-&(&y0 * &acc));
        }
        Self::new(y, self.order, &self.radicand)
    }

    fn require_unit_constant(&self) -> Result<()> {
        match self.coeffs.first() {
            Some(a0) if *a0 != QuadExt::one(&self.radicand) => {
                Err(Error::ConstantTermNotOne(a0.to_string()))
            }
            _ => Ok(()),
        }
    }

    /// Square root with constant term 1, by the degree-by-degree recurrence
    /// `2·y_k = a_k − Σ_{0<i<k} y_i·y_{k−i}`.
    pub fn sqrt(&self) -> Result<Self> {
        self.require_unit_constant()?;
        let half = Rational::new(1.into(), 2.into());
        let mut y: Vec<QuadExt> = Vec::with_capacity(self.order);
        for k in 0..self.order {
            if k == 0 {
                y.push(QuadExt::one(&self.radicand));
                continue;
            }
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc = &acc - &(&y[i] * &y[k - i]);
            }
            y.push(acc.scale(&half));
        }
        Self::new(y, self.order, &self.radicand)
    }

    /// `a^β` for a rational `β` and constant term 1, via the
    /// differential relation `a·y' = β·a'·y`:
    /// `k·y_k = Σ_{i=1}^{k} ((β+1)·i − k)·a_i·y_{k−i}`.
    pub fn pow_rational(&self, beta: &Rational) -> Result<Self> {
        self.require_unit_constant()?;
        let nonzero: Vec<usize> = (1..self.order)
            .filter(|&i| !(self.coeffs[i].is_rational() && self.coeffs[i].p().is_zero()))
            .collect();
        let beta1 = beta + Rational::one();
        let mut y: Vec<QuadExt> = Vec::with_capacity(self.order);
        for k in 0..self.order {
            if k == 0 {
                y.push(QuadExt::one(&self.radicand));
                continue;
            }
            let kr = Rational::from_integer(k.into());
            let mut acc = QuadExt::zero(&self.radicand);
            for &i in nonzero.iter().take_while(|&&i| i <= k) {
                let w = &beta1 * Rational::from_integer(i.into()) - &kr;
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[i] * &y[k - i]).scale(&w);
            }
            y.push(acc.scale(&kr.recip()));
        }
        Self::new(y, self.order, &self.radicand)
    }

    /// `a^(−1/2)`; same contract as [`PowerSeries::sqrt`].
    pub fn pow_neg_half(&self) -> Result<Self> {
        self.pow_rational(&Rational::new((-1).into(), 2.into()))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.canonical();
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.order)
    }
}
