use thiserror::Error;

use crate::algebra::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("radicand mismatch: {left} vs {right}")]
    RadicandMismatch {
        left: Box<Rational>,
        right: Box<Rational>,
    },

    #[error("element {0} is not invertible in Q(sqrt c)")]
    NotInvertible(String),

    #[error("power series constant term must be 1, got {0}")]
    ConstantTermNotOne(String),

    #[error("power series constant term is zero")]
    ZeroConstantTerm,

    #[error("precision must be at least {min} bits, got {got}")]
    PrecisionTooLow { min: usize, got: usize },

    #[error("no real value: {0}")]
    NotReal(String),

    #[error("recurrence division by {n} is inexact")]
    InexactRecurrence { n: usize },

    #[error("regime {0} has no singularity data")]
    UnsupportedRegime(&'static str),

    #[error("singularity index {index} out of range (regime has {count})")]
    SingularityIndex { index: usize, count: usize },

    #[error("alpha = {0} is a nonpositive integer")]
    NonpositiveIntegerAlpha(Rational),

    #[error("alpha = {0} is not a half-integer")]
    NotHalfInteger(Rational),

    #[error("expansion order must be at least 1")]
    ZeroOrder,

    #[error("n must be at least 1 for asymptotic evaluation")]
    NTooSmall,

    #[error("phase requires c < 0, got c = {0}")]
    PhaseNeedsNegativeC(Rational),

    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
}
