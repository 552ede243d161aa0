//! Assembled asymptotic expansions of `T_n(b,c)` and their high-precision
//! evaluation.
//!
//! For each dominant singularity the local terms `a_k·u^(k−1/2)` are
//! translated with `α = 1/2 − k` and regrouped into
//!
//! ```text
//! P·ρ^n·n^(−1/2)/√π · Σ_j g_j·n^(−j),   g_m = Σ_{k+j=m} a_k·(√π/Γ(1/2−k))·e_j(1/2−k)
//! ```
//!
//! In the oscillatory regime the two conjugate contributions combine into
//! `d^(n/2+1/4)·cos((n+1/2)φ − π/4)/((−c)^(1/4)·√(πn))` at leading order.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{rat, rational_pow, QuadExt, RadicalScalar, Rational};
use crate::error::{Error, Result};
use crate::exact::{ParitySign, TrinomialParams};
use crate::numeric::{Evaluate, Hp, Real};
use crate::singularity::{
    classify_regime, local_expansion, locate_singularities, Regime,
};
use crate::translate::translate_term;

/// `prefactor·π^pi_power · growth^n · n^poly_exponent · Σ_j corrections[j]·n^(−j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub growth: QuadExt,
    pub poly_exponent: Rational,
    pub prefactor: RadicalScalar,
    pub pi_power: Rational,
    /// `g_0 = 1, g_1, …, g_J`.
    pub corrections: Vec<QuadExt>,
}

/// Leading-order data for the conjugate pair; `e^{iφ} = unit/modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oscillation {
    /// `√(b² − 4c)`.
    pub modulus: RadicalScalar,
    /// `b + 2i√(−c)`.
    pub unit: QuadExt,
    /// `(−c)^(−1/4)`.
    pub amplitude: RadicalScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticExpansion {
    pub params: TrinomialParams,
    /// Parameters with `b ≥ 0`; all contributions refer to these.
    pub reduced: TrinomialParams,
    pub parity: ParitySign,
    pub regime: Regime,
    pub order: usize,
    pub contributions: Vec<Contribution>,
    pub oscillation: Option<Oscillation>,
    /// Zero at odd `n` (the symmetric pair cancels there).
    pub parity_mask: bool,
}

impl AsymptoticExpansion {
    /// Order actually carried by the corrections: the oscillatory regime is
    /// assembled at leading order only.
    pub fn effective_order(&self) -> usize {
        match self.regime {
            Regime::ConjugatePair | Regime::CZero => 0,
            _ => self.order,
        }
    }

    /// Corrections of the first contribution.
    pub fn corrections(&self) -> &[QuadExt] {
        &self.contributions[0].corrections
    }
}

fn assemble_contribution(
    params: &TrinomialParams,
    which: usize,
    order: usize,
) -> Result<Contribution> {
    let data = local_expansion(params, which, order)?;
    let c = params.c();
    let mut g = vec![QuadExt::zero(c); order + 1];
    for (k, a) in data.local_series.coeffs().iter().enumerate().take(order + 1) {
        let alpha = rat(1, 2) - Rational::from_integer(k.into());
        let term = translate_term(&data.prefactor, a, &alpha, &data.inv_location, order - k)?;
        if term.is_zero() {
            continue;
        }
        g[k] = &g[k] + &term.scalar;
        for (j, e) in term.corrections.iter().enumerate() {
            g[k + j + 1] = &g[k + j + 1] + &term.scalar.scale(e);
        }
    }
    Ok(Contribution {
        growth: data.inv_location,
        poly_exponent: rat(-1, 2),
        prefactor: data.prefactor,
        pi_power: rat(-1, 2),
        corrections: g,
    })
}

/// Builds the full expansion of `T_n(b,c)` to relative order `n^(−J)`.
pub fn assemble_expansion(params: &TrinomialParams, order: usize) -> Result<AsymptoticExpansion> {
    let regime = classify_regime(params);
    let (reduced, parity) = params.symmetry_reduce();
    let c = reduced.c().clone();
    let mut oscillation = None;
    let contributions = match regime {
        Regime::Trivial => return Err(Error::UnsupportedRegime(regime.tag())),
        Regime::CZero => vec![Contribution {
            growth: QuadExt::rational(reduced.b().clone(), &c),
            poly_exponent: Rational::zero(),
            prefactor: RadicalScalar::one(&c),
            pi_power: Rational::zero(),
            corrections: vec![QuadExt::one(&c)],
        }],
        Regime::DZero | Regime::SingleDominant => {
            let which = locate_singularities(&reduced)?
                .iter()
                .position(|s| s.dominant)
                .expect("one dominant singularity");
            vec![assemble_contribution(&reduced, which, order)?]
        }
        Regime::SymmetricPair => vec![
            assemble_contribution(&reduced, 0, order)?,
            assemble_contribution(&reduced, 1, order)?,
        ],
        Regime::ConjugatePair => {
            let unit = &QuadExt::rational(reduced.b().clone(), &c)
                + &QuadExt::sqrt_of(&c).scale(&rat(2, 1));
            oscillation = Some(Oscillation {
                modulus: RadicalScalar::new(
                    QuadExt::rational(reduced.discriminant(), &c),
                    rat(1, 2),
                ),
                unit,
                amplitude: RadicalScalar::new(QuadExt::rational(-&c, &c), rat(-1, 4)),
            });
            vec![
                assemble_contribution(&reduced, 0, 0)?,
                assemble_contribution(&reduced, 1, 0)?,
            ]
        }
    };
    Ok(AsymptoticExpansion {
        params: params.clone(),
        reduced,
        parity,
        regime,
        order,
        contributions,
        oscillation,
        parity_mask: regime == Regime::SymmetricPair,
    })
}

/// The angle with `e^{iφ} = (b + 2i√(−c))/√(b² − 4c)`.
#[derive(Clone, Debug)]
pub struct Phi {
    pub value: Real,
}

pub fn phase_phi(params: &TrinomialParams, precision_bits: usize) -> Result<Phi> {
    if !params.c().is_negative() {
        return Err(Error::PhaseNeedsNegativeC(params.c().clone()));
    }
    let mut hp = Hp::new(precision_bits)?;
    let value = phase_in(&mut hp, params);
    Ok(Phi {
        value: hp.finish(&value),
    })
}

fn phase_in(hp: &mut Hp, params: &TrinomialParams) -> Real {
    let y = hp.mul(&hp.small(2), &hp.sqrt(&hp.rational(&-params.c())));
    let x = hp.rational(params.b());
    hp.atan2(&y, &x)
}

#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: Real,
    /// `ln|value|`; `-inf` when the estimate vanishes.
    pub log_abs: Real,
    /// `cos((n+1/2)φ − π/4)` in the oscillatory regime.
    pub cos_factor: Option<Real>,
}

/// Evaluates the expansion at `n ≥ 1`.
pub fn eval_expansion(
    exp: &AsymptoticExpansion,
    n: u64,
    precision_bits: usize,
) -> Result<Estimate> {
    let mut hp = Hp::new(precision_bits)?;
    if n == 0 {
        return Err(Error::NTooSmall);
    }
    let sign = exp.parity.sign(n);
    let zero = || Estimate {
        value: hp_zero(),
        log_abs: astro_float::INF_NEG,
        cos_factor: None,
    };

    match exp.regime {
        Regime::Trivial => unreachable!("never assembled"),
        Regime::CZero => {
            let rho = exp.contributions[0]
                .growth
                .to_rational()
                .expect("pole location is rational");
            let v = rational_pow(&rho, n as i64);
            let v = hp.rational(&if sign < 0 { -v } else { v });
            let l = hp.ln(&v.abs());
            Ok(Estimate {
                value: hp.finish(&v),
                log_abs: hp.finish(&l),
                cos_factor: None,
            })
        }
        Regime::SymmetricPair if n % 2 == 1 => Ok(zero()),
        Regime::ConjugatePair if exp.reduced.b().is_zero() && n % 2 == 1 => Ok(Estimate {
            cos_factor: Some(hp_zero()),
            ..zero()
        }),
        Regime::ConjugatePair => {
            let osc = exp.oscillation.as_ref().expect("oscillation data");
            let phi = phase_in(&mut hp, &exp.reduced);
            let pi = hp.pi();
            let nr = hp.small(n as i64);
            let half_n = hp.add(&nr, &hp.rational(&rat(1, 2)));
            let angle = hp.sub(&hp.mul(&half_n, &phi), &hp.div(&pi, &hp.small(4)));
            let cos = hp.cos(&angle);
            let d = osc.modulus.base.eval_real(&mut hp)?;
            let amp = osc.amplitude.eval_real(&mut hp)?;
            // (n/2 + 1/4)·ln d + ln amp − ln(πn)/2 + ln|cos|
            let ld = hp.ln(&d);
            let la = hp.ln(&amp);
            let lpn = hp.ln(&hp.mul(&pi, &nr));
            let lc = hp.ln(&cos.abs());
            let expo = hp.rational(&rat(2 * n as i64 + 1, 4));
            let mut l = hp.mul(&expo, &ld);
            l = hp.add(&l, &la);
            l = hp.sub(&l, &hp.div(&lpn, &hp.small(2)));
            l = hp.add(&l, &lc);
            let mut v = hp.exp(&l);
            if cos.is_negative() != (sign < 0) {
                v = v.neg();
            }
            if cos.is_zero() {
                return Ok(Estimate {
                    cos_factor: Some(hp.finish(&cos)),
                    ..zero()
                });
            }
            Ok(Estimate {
                value: hp.finish(&v),
                log_abs: hp.finish(&l),
                cos_factor: Some(hp.finish(&cos)),
            })
        }
        Regime::DZero | Regime::SingleDominant | Regime::SymmetricPair => {
            let c = &exp.contributions[0];
            let p = c.prefactor.eval_real(&mut hp)?;
            let rho = c.growth.eval_real(&mut hp)?;
            let nr = hp.small(n as i64);
            let inv_n = hp.div(&hp.small(1), &nr);
            // Horner in 1/n
            let mut sum = hp.small(0);
            for g in c.corrections.iter().rev() {
                let gv = g.eval_real(&mut hp)?;
                sum = hp.add(&hp.mul(&sum, &inv_n), &gv);
            }
            let pi = hp.pi();
            let mut l = hp.ln(&p.abs());
            let lr = hp.ln(&rho.abs());
            l = hp.add(&l, &hp.mul(&nr, &lr));
            let ln_n = hp.ln(&nr);
            l = hp.add(&l, &hp.mul(&hp.rational(&c.poly_exponent), &ln_n));
            let lpi = hp.ln(&pi);
            l = hp.add(&l, &hp.mul(&hp.rational(&c.pi_power), &lpi));
            if sum.is_zero() {
                return Ok(zero());
            }
            let ls = hp.ln(&sum.abs());
            l = hp.add(&l, &ls);
            if exp.parity_mask {
                let l2 = hp.ln(&hp.small(2));
                l = hp.add(&l, &l2);
            }
            let mut negative = sum.is_negative() ^ p.is_negative();
            if rho.is_negative() && n % 2 == 1 {
                negative = !negative;
            }
            if sign < 0 {
                negative = !negative;
            }
            let mut v = hp.exp(&l);
            if negative {
                v = v.neg();
            }
            Ok(Estimate {
                value: hp.finish(&v),
                log_abs: hp.finish(&l),
                cos_factor: None,
            })
        }
    }
}

fn hp_zero() -> Real {
    Real::from_word(0, 64)
}

/// Direct complex summation of every stored contribution, without the
/// cosine or doubling shortcuts. Used to cross-check [`eval_expansion`].
pub fn eval_by_contributions(
    exp: &AsymptoticExpansion,
    n: u64,
    precision_bits: usize,
) -> Result<Real> {
    let mut hp = Hp::new(precision_bits)?;
    if n == 0 {
        return Err(Error::NTooSmall);
    }
    let nr = hp.small(n as i64);
    let pi = hp.pi();
    let mut total = hp.complex(hp.small(0), hp.small(0));
    for c in &exp.contributions {
        let p = c.prefactor.eval_complex(&mut hp)?;
        let rho = c.growth.eval_complex(&mut hp)?;
        let rho_n = hp.c_powi(&rho, n);
        let mut sum = hp.complex(hp.small(0), hp.small(0));
        for (j, g) in c.corrections.iter().enumerate() {
            let gv = g.eval_complex(&mut hp)?;
            let w = hp.powi(&nr, -(j as i64));
            sum = hp.c_add(&sum, &hp.c_scale(&gv, &w));
        }
        let scalar = {
            let np = hp.pow_rational(&nr, &c.poly_exponent)?;
            let pp = hp.pow_rational(&pi, &c.pi_power)?;
            hp.mul(&np, &pp)
        };
        let term = hp.c_mul(&hp.c_mul(&p, &rho_n), &sum);
        total = hp.c_add(&total, &hp.c_scale(&term, &scalar));
    }
    let mut v = total.re;
    if exp.parity.sign(n) < 0 {
        v = v.neg();
    }
    Ok(hp.finish(&v))
}

/// `ln|x|` of an exact value, `-inf` at zero.
pub fn ln_abs_exact(hp: &mut Hp, x: &Rational) -> Real {
    if x.is_zero() {
        return astro_float::INF_NEG;
    }
    let v = hp.rational(&x.abs());
    hp.ln(&v)
}

/// Signed relative error `exact/estimate − 1`; `0` when both vanish.
pub fn relative_error(hp: &mut Hp, exact: &Rational, estimate: &Real) -> Real {
    if estimate.is_zero() {
        return if exact.is_zero() {
            hp_zero()
        } else {
            astro_float::INF_POS
        };
    }
    // same rounding as the estimate, so exact estimates give exactly 0
    let e = hp.rational(exact);
    let e = hp.finish(&e);
    let r = hp.sub(&hp.div(&e, estimate), &hp.small(1));
    hp.finish(&r)
}

/// `|T|^(1/n)` for exact `T`.
pub fn nth_root_abs(hp: &mut Hp, x: &Rational, n: u64) -> Real {
    if x.is_zero() {
        return hp_zero();
    }
    let l = ln_abs_exact(hp, x);
    let scaled = hp.div(&l, &hp.small(n.to_i64().unwrap_or(i64::MAX)));
    let r = hp.exp(&scaled);
    hp.finish(&r)
}
