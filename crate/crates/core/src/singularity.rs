//! Singularities of `F(t) = 1/√(1 − 2bt + dt²)` and exact local Puiseux data.
//!
//! With `ρ₁ = b + 2s`, `ρ₂ = b − 2s` (`s² = c`) the quadratic factors as
//! `(1 − ρ₁t)(1 − ρ₂t)`. Around `t_i = 1/ρ_i`, with `u = 1 − t/t_i` and
//! `r = ρ_o/ρ_i` for the other root,
//!
//! ```text
//! F = u^(−1/2) · (1 − r)^(−1/2) · (1 + r/(1 − r)·u)^(−1/2)
//! ```
//!
//! so every local series lives in `Q(s)` and the only radical left over is
//! the prefactor `(1 − r)^(−1/2)`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{rat, PowerSeries, QuadExt, RadicalScalar, Rational};
use crate::error::{Error, Result};
use crate::exact::TrinomialParams;

pub const DEFAULT_ORDER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `c = 0`, `b ≠ 0`: a simple pole, `T_n = b^n`.
    CZero,
    /// `d = 0`, `c ≠ 0`: one square-root singularity with trivial local series.
    DZero,
    /// `c > 0`, `b ≠ 0`, `d ≠ 0`: one strictly dominant branch point.
    SingleDominant,
    /// `b = 0`, `c > 0`: branch points at `±1/(2√c)`.
    SymmetricPair,
    /// `c < 0`: complex-conjugate branch points of equal modulus.
    ConjugatePair,
    /// `b = c = 0`: `F ≡ 1`.
    Trivial,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::CZero => "C_ZERO",
            Regime::DZero => "D_ZERO",
            Regime::SingleDominant => "SINGLE_DOMINANT",
            Regime::SymmetricPair => "SYMMETRIC_PAIR",
            Regime::ConjugatePair => "CONJUGATE_PAIR",
            Regime::Trivial => "TRIVIAL",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn classify_regime(params: &TrinomialParams) -> Regime {
    let (p, _) = params.symmetry_reduce();
    let (b, c) = (p.b(), p.c());
    if b.is_zero() && c.is_zero() {
        Regime::Trivial
    } else if c.is_zero() {
        Regime::CZero
    } else if p.discriminant().is_zero() {
        Regime::DZero
    } else if c.is_negative() {
        Regime::ConjugatePair
    } else if b.is_zero() {
        Regime::SymmetricPair
    } else {
        Regime::SingleDominant
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Singularity {
    /// `1/t_i`.
    pub inv_location: QuadExt,
    pub dominant: bool,
}

/// Local data at one singularity:
/// `F(t) ≈ prefactor · u^exponent · local_series(u)`, `u = 1 − t/t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityData {
    pub inv_location: QuadExt,
    pub exponent: Rational,
    pub prefactor: RadicalScalar,
    pub local_series: PowerSeries,
    pub dominant: bool,
}

/// Singularities of `F` as reciprocal locations, with dominance decided
/// exactly. Branch-point regimes list `b + 2s` first, then `b − 2s`.
pub fn locate_singularities(params: &TrinomialParams) -> Result<Vec<Singularity>> {
    let c = params.c();
    let b = params.b();
    match classify_regime(params) {
        Regime::Trivial => Err(Error::UnsupportedRegime(Regime::Trivial.tag())),
        Regime::CZero => Ok(vec![Singularity {
            inv_location: QuadExt::rational(b.clone(), c),
            dominant: true,
        }]),
        // 1 − 2bt + dt² = 1 − 2bt
        Regime::DZero => Ok(vec![Singularity {
            inv_location: QuadExt::rational(b * rat(2, 1), c),
            dominant: true,
        }]),
        regime => {
            let two_s = QuadExt::sqrt_of(c).scale(&rat(2, 1));
            let bq = QuadExt::rational(b.clone(), c);
            // |b + 2√c| > |b − 2√c| iff b·√c > 0, i.e. b > 0 here
            let (first, second) = match regime {
                Regime::SingleDominant => (b.is_positive(), b.is_negative()),
                _ => (true, true),
            };
            Ok(vec![
                Singularity {
                    inv_location: &bq + &two_s,
                    dominant: first,
                },
                Singularity {
                    inv_location: &bq - &two_s,
                    dominant: second,
                },
            ])
        }
    }
}

/// Puiseux data at singularity `which` (an index into
/// [`locate_singularities`]), with `order + 1` series coefficients.
pub fn local_expansion(
    params: &TrinomialParams,
    which: usize,
    order: usize,
) -> Result<SingularityData> {
    let sings = locate_singularities(params)?;
    let count = sings.len();
    let this = sings
        .get(which)
        .ok_or(Error::SingularityIndex { index: which, count })?
        .clone();
    let c = params.c();
    let terms = order + 1;

    if count == 1 {
        let exponent = match classify_regime(params) {
            Regime::CZero => rat(-1, 1),
            _ => rat(-1, 2),
        };
        return Ok(SingularityData {
            inv_location: this.inv_location,
            exponent,
            prefactor: RadicalScalar::one(c),
            local_series: PowerSeries::one(terms, c),
            dominant: true,
        });
    }

    let other = &sings[1 - which].inv_location;
    let rho = &this.inv_location;
    let one = QuadExt::one(c);
    // r = t_i/t_o = ρ_o/ρ_i
    let r = other.div(rho)?;
    let one_minus_r = &one - &r;
    let slope = r.div(&one_minus_r)?;
    let local_series = PowerSeries::new(vec![one.clone(), slope], terms, c)?.pow_neg_half()?;
    let prefactor = RadicalScalar::new(one_minus_r.inv()?, rat(1, 2));
    Ok(SingularityData {
        inv_location: this.inv_location,
        exponent: rat(-1, 2),
        prefactor,
        local_series,
        dominant: this.dominant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{numeric_eval, numeric_eval_real, to_f64, Evaluate, Hp};

    fn p(b: i64, c: i64) -> TrinomialParams {
        TrinomialParams::from_ints(b, c)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_regime(&p(1, 16)), Regime::SingleDominant);
        assert_eq!(classify_regime(&p(2, 1)), Regime::DZero);
        assert_eq!(classify_regime(&p(1, -1)), Regime::ConjugatePair);
        assert_eq!(classify_regime(&p(0, 1)), Regime::SymmetricPair);
        assert_eq!(classify_regime(&p(0, -1)), Regime::ConjugatePair);
        assert_eq!(classify_regime(&p(-3, 0)), Regime::CZero);
        assert_eq!(classify_regime(&p(-2, 1)), Regime::DZero);
        assert_eq!(classify_regime(&p(0, 0)), Regime::Trivial);
        assert_eq!(classify_regime(&p(1, 1)), Regime::SingleDominant);
    }

    #[test]
    fn locate_examples() {
        let s = locate_singularities(&p(4, 1)).unwrap();
        assert_eq!(s[0].inv_location.to_rational(), Some(rat(6, 1)));
        assert!(s[0].dominant);
        assert_eq!(s[1].inv_location.to_rational(), Some(rat(2, 1)));
        assert!(!s[1].dominant);

        let s = locate_singularities(&p(1, 16)).unwrap();
        assert_eq!(s[0].inv_location.to_rational(), Some(rat(9, 1)));
        assert_eq!(s[1].inv_location.to_rational(), Some(rat(-7, 1)));
        assert!(s[0].dominant && !s[1].dominant);

        let s = locate_singularities(&p(0, 1)).unwrap();
        assert_eq!(s[0].inv_location.to_rational(), Some(rat(2, 1)));
        assert_eq!(s[1].inv_location.to_rational(), Some(rat(-2, 1)));
        assert!(s[0].dominant && s[1].dominant);

        // negative b: the b − 2s root dominates
        let s = locate_singularities(&p(-1, 16)).unwrap();
        assert!(!s[0].dominant && s[1].dominant);

        assert!(matches!(
            locate_singularities(&p(0, 0)),
            Err(Error::UnsupportedRegime("TRIVIAL"))
        ));
    }

    #[test]
    fn dominance_matches_numeric_moduli() {
        for (b, c) in [(1, 16), (3, 1), (5, 4), (1, 2), (-2, 3), (7, 5)] {
            let s = locate_singularities(&p(b, c)).unwrap();
            let m0 = to_f64(&numeric_eval_real(&s[0].inv_location, 128).unwrap()).abs();
            let m1 = to_f64(&numeric_eval_real(&s[1].inv_location, 128).unwrap()).abs();
            assert_eq!(s[0].dominant, m0 > m1, "({b},{c})");
            assert_eq!(s[1].dominant, m1 > m0, "({b},{c})");
        }
    }

    #[test]
    fn golden_local_series_at_b_equal_four_root_c() {
        let data = local_expansion(&p(4, 1), 0, 5).unwrap();
        let want = [(1, 1), (-1, 4), (3, 32), (-5, 128), (35, 2048), (-63, 8192)];
        assert_eq!(data.local_series.order(), 6);
        for (k, &(n, d)) in want.iter().enumerate() {
            assert_eq!(data.local_series.coeffs()[k].to_rational(), Some(rat(n, d)));
        }
        assert_eq!(data.prefactor.exponent, rat(1, 2));
        assert_eq!(data.prefactor.base.to_rational(), Some(rat(3, 2)));
        assert_eq!(data.exponent, rat(-1, 2));
    }

    #[test]
    fn degenerate_regimes() {
        let d = local_expansion(&p(2, 1), 0, 4).unwrap();
        assert_eq!(d.local_series, PowerSeries::one(5, &rat(1, 1)));
        assert_eq!(d.prefactor.base.to_rational(), Some(rat(1, 1)));
        assert_eq!(d.exponent, rat(-1, 2));
        assert_eq!(d.inv_location.to_rational(), Some(rat(4, 1)));

        let z = local_expansion(&p(3, 0), 0, 4).unwrap();
        assert_eq!(z.exponent, rat(-1, 1));
        assert_eq!(z.local_series, PowerSeries::one(5, &rat(0, 1)));
        assert_eq!(z.inv_location.to_rational(), Some(rat(3, 1)));

        assert!(matches!(
            local_expansion(&p(2, 1), 1, 3),
            Err(Error::SingularityIndex { index: 1, count: 1 })
        ));
        assert!(matches!(
            local_expansion(&p(1, 1), 2, 3),
            Err(Error::SingularityIndex { index: 2, count: 2 })
        ));
    }

    #[test]
    fn leading_prefactor_matches_t_minus_t1_normalisation() {
        // leading coefficient in closed form: 1/(2c^{1/4}) times t₁^{−1/2}
        let mut hp = Hp::new(256).unwrap();
        for (b, c) in [(1, 16), (3, 1), (5, 4), (2, 7)] {
            let data = local_expansion(&p(b, c), 0, 2).unwrap();
            let got = data.prefactor.eval_real(&mut hp).unwrap();
            let rho = data.inv_location.eval_real(&mut hp).unwrap();
            let c4 = hp.sqrt(&hp.sqrt(&hp.small(c)));
            let want = hp.div(&hp.sqrt(&rho), &hp.mul(&hp.small(2), &c4));
            let rel = to_f64(&hp.div(&hp.sub(&got, &want), &want)).abs();
            assert!(rel < 1e-70, "({b},{c}) rel={rel}");
        }
    }

    #[test]
    fn conjugate_pair_data_are_conjugates() {
        for (b, c) in [(1, -1), (3, -2), (0, -5)] {
            let a = local_expansion(&p(b, c), 0, 6).unwrap();
            let z = local_expansion(&p(b, c), 1, 6).unwrap();
            assert_eq!(z.inv_location, a.inv_location.conj());
            assert_eq!(z.prefactor.base, a.prefactor.base.conj());
            for (x, y) in a.local_series.coeffs().iter().zip(z.local_series.coeffs()) {
                assert_eq!(*y, x.conj());
            }
        }
    }

    #[test]
    fn conjugate_prefactor_matches_principal_root_form() {
        // √((b + 2i√−c)/(4i√−c)) for (1,−1)
        let a = local_expansion(&p(1, -1), 0, 0).unwrap();
        let z = numeric_eval(&a.prefactor, 128).unwrap();
        let w = num_complex_sqrt((1.0, 2.0), (0.0, 4.0));
        assert!((to_f64(&z.re) - w.0).abs() < 1e-14);
        assert!((to_f64(&z.im) - w.1).abs() < 1e-14);
    }

    fn num_complex_sqrt(n: (f64, f64), d: (f64, f64)) -> (f64, f64) {
        let den = d.0 * d.0 + d.1 * d.1;
        let q = ((n.0 * d.0 + n.1 * d.1) / den, (n.1 * d.0 - n.0 * d.1) / den);
        let r = (q.0 * q.0 + q.1 * q.1).sqrt();
        let th = q.1.atan2(q.0);
        (r.sqrt() * (th / 2.0).cos(), r.sqrt() * (th / 2.0).sin())
    }
}
