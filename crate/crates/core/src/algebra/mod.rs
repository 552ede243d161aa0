//! Exact arithmetic kernel: rationals, the quadratic extension Q(sqrt c),
//! symbolic radical prefactors and truncated power series over Q(sqrt c).

mod quad;
mod rational;
mod series;

pub use quad::{QuadExt, RadicalScalar};
pub(crate) use rational::common_denominator;
pub use rational::{parse_rational, perfect_square_root, rat, rational_pow, Rational};
pub use series::PowerSeries;
