//! Generalised central trinomial coefficients `T_n(b,c) = [x^n](x² + bx + c)^n`:
//! exact values by several cross-checking methods, and asymptotic expansions
//! to arbitrary order obtained by singularity analysis of the generating
//! function `1/√(1 − 2bt + (b² − 4c)t²)`.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exact;
pub mod expansion;
pub mod numeric;
pub mod report;
pub mod singularity;
pub mod translate;

pub use error::{Error, Result};
