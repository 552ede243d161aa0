use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{perfect_square_root, Rational};
use crate::error::{Error, Result};

/// An element `p + q·s` of `Q(s)` with `s² = radicand`.
///
/// The representation is kept symbolic even when the radicand is a perfect
/// square. Equality compares values under the embedding `s = +√c` (or
/// `s = +i√|c|` for negative radicands), so `1/2 + s` with radicand `1`
/// equals `3/2`.
#[derive(Clone, Debug)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    radicand: Rational,
}

impl QuadExt {
    pub fn new(p: Rational, q: Rational, radicand: Rational) -> Self {
        Self { p, q, radicand }
    }

    pub fn rational(p: Rational, radicand: &Rational) -> Self {
        Self::new(p, Rational::zero(), radicand.clone())
    }

    pub fn zero(radicand: &Rational) -> Self {
        Self::rational(Rational::zero(), radicand)
    }

    pub fn one(radicand: &Rational) -> Self {
        Self::rational(Rational::one(), radicand)
    }

    /// The generator `s` itself.
    pub fn sqrt_of(radicand: &Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), radicand.clone())
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }

    pub(crate) fn check_field(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::RadicandMismatch {
                left: Box::new(self.radicand.clone()),
                right: Box::new(other.radicand.clone()),
            })
        }
    }

    /// `p² − q²c`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * &self.radicand
    }

    pub fn conj(&self) -> Self {
        Self::new(self.p.clone(), -&self.q, self.radicand.clone())
    }

    /// `(p − q·s)/(p² − q²c)`; fails when the norm vanishes.
    pub fn inv(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(Self::new(
            &self.p / &norm,
            -&self.q / &norm,
            self.radicand.clone(),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.p * k, &self.q * k, self.radicand.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.radicand);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Zero as a value (see the type-level note on equality).
    pub fn is_zero(&self) -> bool {
        let z = Self::zero(&self.radicand);
        *self == z
    }

    /// True when the `s` component vanishes symbolically.
    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// The same value with `s` folded into the rational part when the
    /// radicand is a perfect square (including 0). Used for display.
    pub fn canonical(&self) -> Self {
        if self.q.is_zero() {
            return self.clone();
        }
        match perfect_square_root(&self.radicand) {
            Some(r) => Self::rational(&self.p + &self.q * r, &self.radicand),
            None => self.clone(),
        }
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        let c = self.canonical();
        c.q.is_zero().then_some(c.p)
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        if self.radicand != other.radicand {
            return false;
        }
        let dp = &self.p - &other.p;
        let dq = &self.q - &other.q;
        if dq.is_zero() {
            return dp.is_zero();
        }
        // dp + dq·√c = 0 needs √c = −dp/dq, rational and nonnegative.
        match perfect_square_root(&self.radicand) {
            Some(r) => (dp + dq * r).is_zero(),
            None => false,
        }
    }
}

impl Eq for QuadExt {}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("sqrt({})", self.radicand);
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) if self.q.is_one() => write!(f, "{s}"),
            (true, false) => write!(f, "{}*{s}", self.q),
            (false, false) => {
                let sign = if self.q.is_negative() { '-' } else { '+' };
                let mag = self.q.abs();
                if mag.is_one() {
                    write!(f, "{} {sign} {s}", self.p)
                } else {
                    write!(f, "{} {sign} {}*{s}", self.p, mag)
                }
            }
        }
    }
}

fn assert_same(a: &QuadExt, b: &QuadExt) {
    assert!(
        a.same_field(b),
        "QuadExt radicand mismatch: {} vs {}",
        a.radicand,
        b.radicand
    );
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        assert_same(self, rhs);
        QuadExt::new(&self.p + &rhs.p, &self.q + &rhs.q, self.radicand.clone())
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        assert_same(self, rhs);
        QuadExt::new(&self.p - &rhs.p, &self.q - &rhs.q, self.radicand.clone())
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        assert_same(self, rhs);
        let p = &self.p * &rhs.p + &self.q * &rhs.q * &self.radicand;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        QuadExt::new(p, q, self.radicand.clone())
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-&self.p, -&self.q, self.radicand.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// `base^exponent`, kept symbolic. Fourth roots such as `c^(1/4)` live here
/// rather than in the series field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalScalar {
    pub base: QuadExt,
    pub exponent: Rational,
}

impl RadicalScalar {
    pub fn new(base: QuadExt, exponent: Rational) -> Self {
        Self { base, exponent }
    }

    pub fn one(radicand: &Rational) -> Self {
        Self::new(QuadExt::one(radicand), Rational::one())
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_one() {
            write!(f, "{}", self.base.canonical())
        } else {
            write!(f, "({})^({})", self.base.canonical(), self.exponent)
        }
    }
}
