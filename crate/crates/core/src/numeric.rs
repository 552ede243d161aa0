//! High-precision real and complex evaluation on top of `astro-float`.
//!
//! All intermediate work runs with [`GUARD_BITS`] extra bits; results handed
//! back to callers are rounded to the requested precision with
//! [`Hp::finish`].

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign, INF_NEG};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{QuadExt, RadicalScalar, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 256;
pub const MIN_PRECISION: usize = 64;
pub const GUARD_BITS: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

pub type Real = BigFloat;

/// Evaluation context: target precision plus the constants cache.
pub struct Hp {
    bits: usize,
    work: usize,
    cc: Consts,
}

impl std::fmt::Debug for Hp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hp").field("bits", &self.bits).finish()
    }
}

impl Hp {
    pub fn new(bits: usize) -> Result<Self> {
        if bits < MIN_PRECISION {
            return Err(Error::PrecisionTooLow {
                min: MIN_PRECISION,
                got: bits,
            });
        }
        Ok(Self {
            bits,
            work: bits + GUARD_BITS,
            cc: Consts::new().expect("astro-float constants cache"),
        })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Rounds a working value to the target precision.
    pub fn finish(&self, x: &Real) -> Real {
        let mut y = x.clone();
        if !y.is_zero() && !y.is_nan() && !y.is_inf() {
            let _ = y.set_precision(self.bits, RM);
        }
        y
    }

    pub fn small(&self, x: i64) -> Real {
        BigFloat::from_i64(x, self.work)
    }

    pub fn int(&self, x: &BigInt) -> Real {
        bigint_to_real(x, self.work)
    }

    pub fn rational(&self, x: &Rational) -> Real {
        if x.is_integer() {
            return self.int(x.numer());
        }
        let n = self.int(x.numer());
        let d = self.int(x.denom());
        n.div(&d, self.work, RM)
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        a.add(b, self.work, RM)
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        a.sub(b, self.work, RM)
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        a.mul(b, self.work, RM)
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        a.div(b, self.work, RM)
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        a.sqrt(self.work, RM)
    }

    pub fn ln(&mut self, a: &Real) -> Real {
        if a.is_zero() {
            return INF_NEG;
        }
        a.ln(self.work, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &Real) -> Real {
        a.exp(self.work, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &Real) -> Real {
        a.cos(self.work, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &Real) -> Real {
        a.sin(self.work, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> Real {
        self.cc.pi(self.work, RM)
    }

    /// `x^n` for a signed integer exponent.
    pub fn powi(&self, x: &Real, n: i64) -> Real {
        let m = x.powi(n.unsigned_abs() as usize, self.work, RM);
        if n < 0 {
            self.div(&self.small(1), &m)
        } else {
            m
        }
    }

    /// `atan2(y, x)` in `(−π, π]`.
    pub fn atan2(&mut self, y: &Real, x: &Real) -> Real {
        let pi = self.pi();
        if x.is_zero() {
            return if y.is_zero() {
                self.small(0)
            } else if y.is_negative() {
                self.div(&pi, &self.small(-2))
            } else {
                self.div(&pi, &self.small(2))
            };
        }
        let t = self.div(y, x).atan(self.work, RM, &mut self.cc);
        if x.is_positive() {
            t
        } else if y.is_negative() {
            self.sub(&t, &pi)
        } else {
            self.add(&t, &pi)
        }
    }

    /// `x^e` for real `x > 0` and rational `e`; square roots are extracted
    /// directly when the exponent has denominator 2.
    pub fn pow_rational(&mut self, x: &Real, e: &Rational) -> Result<Real> {
        if e.is_integer() {
            return Ok(self.powi(x, e.to_integer().to_i64().expect("small exponent")));
        }
        if x.is_zero() {
            return if e.is_positive() {
                Ok(self.small(0))
            } else {
                Err(Error::NotReal("zero to a negative fractional power".into()))
            };
        }
        if x.is_negative() {
            return Err(Error::NotReal(format!(
                "negative base to the power {e}"
            )));
        }
        if *e.denom() == BigInt::from(2) {
            let r = self.sqrt(x);
            return Ok(self.powi(&r, e.numer().to_i64().expect("small exponent")));
        }
        let l = self.ln(x);
        let le = self.mul(&l, &self.rational(e));
        Ok(self.exp(&le))
    }

    pub fn complex(&self, re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn c_add(&self, a: &Complex, b: &Complex) -> Complex {
        Complex {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn c_mul(&self, a: &Complex, b: &Complex) -> Complex {
        Complex {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    pub fn c_scale(&self, a: &Complex, k: &Real) -> Complex {
        Complex {
            re: self.mul(&a.re, k),
            im: self.mul(&a.im, k),
        }
    }

    pub fn c_abs(&self, a: &Complex) -> Real {
        self.sqrt(&self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im)))
    }

    pub fn c_powi(&self, a: &Complex, n: u64) -> Complex {
        let mut acc = self.complex(self.small(1), self.small(0));
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.c_mul(&acc, &base);
            }
            base = self.c_mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Principal branch of `z^e`.
    pub fn c_pow_rational(&mut self, z: &Complex, e: &Rational) -> Result<Complex> {
        if z.im.is_zero() && !z.re.is_negative() {
            let re = self.pow_rational(&z.re, e)?;
            return Ok(self.complex(re, self.small(0)));
        }
        let r = self.c_abs(z);
        let theta = self.atan2(&z.im, &z.re);
        let m = self.pow_rational(&r, e)?;
        let angle = self.mul(&theta, &self.rational(e));
        let (c, s) = (self.cos(&angle), self.sin(&angle));
        Ok(self.complex(self.mul(&m, &c), self.mul(&m, &s)))
    }

    /// Decimal scientific rendering with `digits` significant digits, e.g.
    /// `-1.2500e-3`. Zero renders as `0`.
    pub fn format_sci(&mut self, x: &Real, digits: usize) -> String {
        if x.is_nan() {
            return "NaN".into();
        }
        if x.is_inf() {
            return if x.is_negative() { "-inf" } else { "inf" }.into();
        }
        if x.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let ax = x.abs();
        let ln10 = self.ln(&self.small(10));
        let lnx = self.ln(&ax);
        let lg = to_f64(&self.div(&lnx, &ln10));
        let mut k = lg.floor() as i64;
        let ten = self.small(10);
        let lo = BigInt::from(10u32).pow(digits as u32 - 1);
        let hi = &lo * 10;
        let mut mant;
        loop {
            let scale = self.powi(&ten, digits as i64 - 1 - k);
            mant = to_bigint_rounded(&self.mul(&ax, &scale));
            if mant >= hi {
                k += 1;
            } else if mant < lo {
                k -= 1;
            } else {
                break;
            }
        }
        let s = mant.to_string();
        let sign = if x.is_negative() { "-" } else { "" };
        if digits == 1 {
            format!("{sign}{s}e{k}")
        } else {
            format!("{sign}{}.{}e{k}", &s[..1], &s[1..])
        }
    }
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }
}

/// Converts a big integer, rounding once to `p` bits.
pub fn bigint_to_real(x: &BigInt, p: usize) -> Real {
    if x.is_zero() {
        return BigFloat::from_word(0, p);
    }
    let bits = x.bits() as usize;
    let words = bits.div_ceil(64);
    let shifted: BigUint = x.magnitude() << (words * 64 - bits);
    let m = shifted.to_u64_digits();
    let sign = if x.sign() == BigSign::Minus {
        Sign::Neg
    } else {
        Sign::Pos
    };
    let mut f = BigFloat::from_words(&m, sign, bits as Exponent);
    let _ = f.set_precision(p, RM);
    f
}

/// Nearest integer (ties to even are not needed here; ties round away).
pub fn to_bigint_rounded(x: &Real) -> BigInt {
    let Some((words, _n, sign, e, _)) = x.as_raw_parts() else {
        return BigInt::zero();
    };
    if x.is_zero() {
        return BigInt::zero();
    }
    let m = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
            .collect::<Vec<u32>>(),
    );
    let shift = e as i64 - (words.len() as i64) * 64;
    let mag = if shift >= 0 {
        m << shift as usize
    } else {
        let s = (-shift) as usize;
        let half = BigUint::one() << (s - 1);
        (m + half) >> s
    };
    let v = BigInt::from(mag);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

pub fn to_f64(x: &Real) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if x.is_zero() || words.is_empty() {
        return 0.0;
    }
    let top = *words.last().unwrap() as f64;
    let e = e as i64 - 64;
    let v = if e > 2000 {
        f64::INFINITY
    } else if e < -2200 {
        0.0
    } else {
        // split the scaling so neither factor over- or underflows early
        let half = (e / 2) as i32;
        top * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    };
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Numeric evaluation of exact values. For a negative radicand the embedding
/// fixes `s = +i·√|c|`.
pub trait Evaluate {
    fn eval_complex(&self, hp: &mut Hp) -> Result<Complex>;

    fn eval_real(&self, hp: &mut Hp) -> Result<Real>;
}

impl Evaluate for QuadExt {
    fn eval_complex(&self, hp: &mut Hp) -> Result<Complex> {
        let c = self.radicand();
        let root = hp.sqrt(&hp.rational(&c.abs()));
        let p = hp.rational(self.p());
        let qs = hp.mul(&hp.rational(self.q()), &root);
        Ok(if c.is_negative() {
            hp.complex(p, qs)
        } else {
            hp.complex(hp.add(&p, &qs), hp.small(0))
        })
    }

    fn eval_real(&self, hp: &mut Hp) -> Result<Real> {
        if self.radicand().is_negative() && !self.q().is_zero() {
            return Err(Error::NotReal(format!("{self} is not real")));
        }
        Ok(self.eval_complex(hp)?.re)
    }
}

impl Evaluate for RadicalScalar {
    fn eval_complex(&self, hp: &mut Hp) -> Result<Complex> {
        let z = self.base.eval_complex(hp)?;
        hp.c_pow_rational(&z, &self.exponent)
    }

    fn eval_real(&self, hp: &mut Hp) -> Result<Real> {
        let v = self.base.eval_real(hp)?;
        if v.is_negative() && !self.exponent.is_integer() {
            return Err(Error::NotReal(format!(
                "({})^({}) has a negative base",
                self.base, self.exponent
            )));
        }
        hp.pow_rational(&v, &self.exponent)
    }
}

/// Complex value of `x` rounded to `precision_bits`.
pub fn numeric_eval<E: Evaluate>(x: &E, precision_bits: usize) -> Result<Complex> {
    let mut hp = Hp::new(precision_bits)?;
    let z = x.eval_complex(&mut hp)?;
    Ok(Complex {
        re: hp.finish(&z.re),
        im: hp.finish(&z.im),
    })
}

/// Real value of `x` rounded to `precision_bits`; errors when `x` is not real.
pub fn numeric_eval_real<E: Evaluate>(x: &E, precision_bits: usize) -> Result<Real> {
    let mut hp = Hp::new(precision_bits)?;
    let v = x.eval_real(&mut hp)?;
    Ok(hp.finish(&v))
}
