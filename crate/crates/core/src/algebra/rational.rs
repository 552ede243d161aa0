use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `x^e` for any integer exponent; `0^0 = 1`.
pub fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        Pow::pow(x, e as u64)
    } else {
        Pow::pow(x.recip(), e.unsigned_abs())
    }
}

/// The nonnegative rational square root of `x`, if `x` is a perfect square.
pub fn perfect_square_root(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// Parses `"3"`, `"-3/2"` or a plain decimal like `"0.25"` into an exact
/// rational. Exponent notation, `inf` and `nan` are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = parse_int(n).ok_or_else(err)?;
        let d: BigInt = parse_int(d).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let all_digits = |p: &str| p.bytes().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa: BigInt = digits.parse().map_err(|_| err())?;
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = Rational::new(mantissa, scale);
    Ok(if neg { -value } else { value })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let t = s.trim();
    let body = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// Least common multiple of the denominators of `xs`.
pub(crate) fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
