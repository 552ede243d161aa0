//! Exact values of `T_n(b,c) = [x^n](x² + b·x + c)^n`.
//!
//! Four methods are provided and cross-check each other:
//!
//! * [`tn_direct_sum`]: the multinomial unfolding
//!   `Σ_k n!/(k!·k!·(n−2k)!)·b^(n−2k)·c^k`, used as the brute-force oracle;
//! * [`tn_poly_power`]: dense exponentiation of `x² + b·x + c`;
//! * [`tn_recurrence`]: `n·T_n = (2n−1)·b·T_{n−1} − (n−1)·d·T_{n−2}`;
//! * [`tn_series`]: Taylor coefficients of `(1 − 2bt + dt²)^(−1/2)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::algebra::{common_denominator, PowerSeries, Rational};
use crate::error::{Error, Result};

/// `T_n` is an integer for integer `b, c` and a rational otherwise.
pub type ExactValue = Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrinomialParams {
    b: Rational,
    c: Rational,
}

/// How a value computed for the reduced parameters maps back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParitySign {
    Identity,
    /// Multiply by `(−1)^n`.
    FlipOnOdd,
}

impl ParitySign {
    pub fn sign(self, n: u64) -> i32 {
        match self {
            ParitySign::FlipOnOdd if n % 2 == 1 => -1,
            _ => 1,
        }
    }

    pub fn apply(self, n: u64, value: ExactValue) -> ExactValue {
        if self.sign(n) < 0 {
            -value
        } else {
            value
        }
    }
}

impl fmt::Display for ParitySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParitySign::Identity => "identity",
            ParitySign::FlipOnOdd => "flip-on-odd",
        })
    }
}

impl TrinomialParams {
    pub fn new(b: Rational, c: Rational) -> Self {
        Self { b, c }
    }

    pub fn from_ints(b: i64, c: i64) -> Self {
        Self::new(BigInt::from(b).into(), BigInt::from(c).into())
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// `d = b² − 4c`, recomputed on every call.
    pub fn discriminant(&self) -> Rational {
        &self.b * &self.b - &self.c * Rational::from_integer(4.into())
    }

    /// `(λb, λ²c)`, for which `T_n` scales by `λ^n`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        Self::new(&self.b * lambda, &self.c * lambda * lambda)
    }

    /// Maps `b` to `|b|` using `T_n(b,c) = (−1)^n·T_n(−b,c)`.
    pub fn symmetry_reduce(&self) -> (Self, ParitySign) {
        if self.b.is_negative() {
            (Self::new(-&self.b, self.c.clone()), ParitySign::FlipOnOdd)
        } else {
            (self.clone(), ParitySign::Identity)
        }
    }

    /// `λ` with `λb` and `λ²c` integral, together with those integers.
    fn integer_scaling(&self) -> (BigInt, BigInt, BigInt) {
        let lambda = common_denominator([&self.b, &self.c]);
        let l = Rational::from_integer(lambda.clone());
        let b = (&self.b * &l).to_integer();
        let c = (&self.c * &l * &l).to_integer();
        (lambda, b, c)
    }
}

impl fmt::Display for TrinomialParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b={}, c={})", self.b, self.c)
    }
}

/// Multinomial unfolding of `[x^n](x² + bx + c)^n`, over a common
/// denominator `bd^n·cd^⌊n/2⌋`.
pub fn tn_direct_sum(params: &TrinomialParams, n: u64) -> ExactValue {
    let (bn, bd) = (params.b.numer(), params.b.denom());
    let (cn, cd) = (params.c.numer(), params.c.denom());
    let half = n / 2;
    let nn = n as usize;

    let powers = |x: &BigInt, upto: usize| -> Vec<BigInt> {
        let mut v = Vec::with_capacity(upto + 1);
        v.push(BigInt::one());
        for i in 1..=upto {
            let next = &v[i - 1] * x;
            v.push(next);
        }
        v
    };
    let bn_pow = powers(bn, nn);
    let bd_pow = powers(bd, nn);
    let cn_pow = powers(cn, half as usize);
    let cd_pow = powers(cd, half as usize);

    let mut total = BigInt::zero();
    // n!/(k!·k!·(n−2k)!) updated in place
    let mut multinomial = BigInt::one();
    for k in 0..=half {
        let ku = k as usize;
        let rest = nn - 2 * ku;
        let term = &multinomial
            * &bn_pow[rest]
            * &cn_pow[ku]
            * &bd_pow[2 * ku]
            * &cd_pow[half as usize - ku];
        total += term;
        let r = n - 2 * k;
        multinomial = multinomial * BigInt::from(r) * BigInt::from(r.saturating_sub(1))
            / BigInt::from((k + 1) * (k + 1));
    }
    Rational::new(total, &bd_pow[nn] * &cd_pow[half as usize])
}

/// Square-and-multiply on dense integer coefficient arrays, truncated to
/// degree `n`. Rational parameters are cleared by the scaling identity.
pub fn tn_poly_power(params: &TrinomialParams, n: u64) -> ExactValue {
    let (lambda, b, c) = params.integer_scaling();
    let top = n as usize;
    // coefficients indexed by degree, lowest first
    let base = [c, b, BigInt::one()];
    let mut acc: Vec<BigInt> = vec![BigInt::one()];
    for bit in (0..64 - n.leading_zeros()).rev() {
        acc = square_truncated(&acc, top);
        if (n >> bit) & 1 == 1 {
            acc = mul_trinomial_truncated(&acc, &base, top);
        }
    }
    let coeff = acc.get(top).cloned().unwrap_or_default();
    Rational::new(coeff, Pow::pow(&lambda, n))
}

fn square_truncated(a: &[BigInt], top: usize) -> Vec<BigInt> {
    let len = (2 * a.len() - 1).min(top + 1);
    let mut out = vec![BigInt::zero(); len];
    for i in 0..a.len().min(len) {
        if a[i].is_zero() {
            continue;
        }
        let diag = i + i;
        if diag < len {
            out[diag] += &a[i] * &a[i];
        }
        let twice = &a[i] << 1;
        for j in (i + 1)..a.len() {
            if i + j >= len {
                break;
            }
            out[i + j] += &twice * &a[j];
        }
    }
    out
}

fn mul_trinomial_truncated(a: &[BigInt], t: &[BigInt; 3], top: usize) -> Vec<BigInt> {
    let len = (a.len() + 2).min(top + 1);
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in t.iter().enumerate() {
            if i + j < len && !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `T_0..=T_{n_max}` from the three-term recurrence, run on the integer
/// scaled parameters so every division by `n` must leave no remainder.
pub fn tn_recurrence(params: &TrinomialParams, n_max: u64) -> Result<Vec<ExactValue>> {
    let (lambda, b, c) = params.integer_scaling();
    let d = &b * &b - BigInt::from(4) * &c;
    let mut ints: Vec<BigInt> = Vec::with_capacity(n_max as usize + 1);
    ints.push(BigInt::one());
    if n_max >= 1 {
        ints.push(b.clone());
    }
    for n in 2..=n_max {
        let i = n as usize;
        let lhs = BigInt::from(2 * n - 1) * &b * &ints[i - 1]
            - BigInt::from(n - 1) * &d * &ints[i - 2];
        let (q, r) = lhs.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::InexactRecurrence { n: i });
        }
        ints.push(q);
    }
    let mut scale = BigInt::one();
    Ok(ints
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            if i > 0 {
                scale *= &lambda;
            }
            Rational::new(t, scale.clone())
        })
        .collect())
}

/// Coefficients of `1/√(1 − 2bt + dt²)` up to `t^{n_max}`.
pub fn tn_series(params: &TrinomialParams, n_max: u64) -> Vec<ExactValue> {
    let order = n_max as usize + 1;
    let poly = [
        Rational::one(),
        -&params.b * Rational::from_integer(2.into()),
        params.discriminant(),
    ];
    let s = PowerSeries::from_rationals(&poly, order, &params.c)
        .pow_neg_half()
        .expect("constant term is 1");
    s.coeffs()
        .iter()
        .map(|x| x.to_rational().expect("rational input gives rational output"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ints(v: &[i64]) -> Vec<ExactValue> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn p(b: i64, c: i64) -> TrinomialParams {
        TrinomialParams::from_ints(b, c)
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(tn_direct_sum(&p(1, 1), 0), rat(1, 1));
        let got: Vec<_> = (0..=6).map(|n| tn_direct_sum(&p(1, 1), n)).collect();
        assert_eq!(got, ints(&[1, 1, 3, 7, 19, 51, 141]));
        assert_eq!(tn_direct_sum(&p(2, 1), 3), rat(20, 1));
        assert_eq!(tn_direct_sum(&p(1, -1), 3), rat(-5, 1));
    }

    #[test]
    fn direct_sum_rational_params() {
        // (x² + x/2 + 1/4)², coefficient of x² is 1/4 + 2·1/4 = 3/4
        let pr = TrinomialParams::new(rat(1, 2), rat(1, 4));
        assert_eq!(tn_direct_sum(&pr, 2), rat(3, 4));
    }

    #[test]
    fn poly_power_examples() {
        assert_eq!(tn_poly_power(&p(1, 16), 1), rat(1, 1));
        for (b, c) in [(1, 1), (-3, 2), (5, -7)] {
            assert_eq!(tn_poly_power(&p(b, c), 2), rat(b * b + 2 * c, 1));
        }
        assert_eq!(tn_poly_power(&p(2, 4), 3), rat(56, 1));
        assert_eq!(tn_poly_power(&p(2, 4), 0), rat(1, 1));
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(tn_recurrence(&p(1, 1), 3).unwrap()[3], rat(7, 1));
        assert_eq!(tn_recurrence(&p(1, -1), 2).unwrap()[2], rat(-1, 1));
        let t = tn_recurrence(&p(0, 1), 2).unwrap();
        assert_eq!(t, ints(&[1, 0, 2]));
        assert_eq!(tn_recurrence(&p(3, 3), 0).unwrap(), ints(&[1]));
    }

    #[test]
    fn recurrence_validated_against_oracle_on_seed_set() {
        let seeds = [
            TrinomialParams::from_ints(1, 1),
            TrinomialParams::from_ints(-2, 5),
            TrinomialParams::from_ints(3, -4),
            TrinomialParams::new(rat(1, 3), rat(-5, 7)),
            TrinomialParams::new(rat(-3, 2), rat(9, 16)),
        ];
        for s in &seeds {
            let rec = tn_recurrence(s, 60).unwrap();
            for (n, v) in rec.iter().enumerate() {
                assert_eq!(*v, tn_direct_sum(s, n as u64), "{s} n={n}");
            }
        }
    }

    #[test]
    fn series_examples() {
        assert_eq!(tn_series(&p(2, 1), 4), ints(&[1, 2, 6, 20, 70]));
        assert_eq!(tn_series(&p(1, 1), 4), ints(&[1, 1, 3, 7, 19]));
        assert_eq!(tn_series(&p(0, 0), 3), ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn symmetry_reduce_examples() {
        let (r, s) = p(-1, 1).symmetry_reduce();
        assert_eq!((r, s), (p(1, 1), ParitySign::FlipOnOdd));
        assert_eq!(tn_direct_sum(&p(-1, 1), 3), rat(-7, 1));
        assert_eq!(s.apply(3, tn_direct_sum(&p(1, 1), 3)), rat(-7, 1));
        assert_eq!(p(1, 16).symmetry_reduce(), (p(1, 16), ParitySign::Identity));
        assert_eq!(p(0, 1).symmetry_reduce(), (p(0, 1), ParitySign::Identity));
    }

    #[test]
    fn discriminant_tracks_parameters() {
        assert_eq!(p(1, 1).discriminant(), rat(-3, 1));
        assert_eq!(p(4, 1).discriminant(), rat(12, 1));
        assert_eq!(p(1, 16).scaled(&rat(2, 1)), p(2, 64));
    }
}
