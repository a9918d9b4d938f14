//! σ-Brjuno functions `B_σ(x) = Σ_j β_{j-1}(x) x_j^{-1/σ}` over the regular
//! continued fraction, with exact closed forms at quadratic irrationals,
//! certified lower bounds, global-minimizer localization and cusp scaling.
//!
//! The crate is organised by subsystem:
//!
//! * [`cf`]: Gauss map, convergents, quadratic irrationals and the
//!   `[0; a1, ..., (b1, ...)]` text format.
//! * [`eval`]: partial sums, closed forms and enclosures of `B_σ`.
//! * [`bounds`]: the lower-bound family `b*`, `φ`, `g` and `g_k`.
//! * [`minima`]: transition values `σ*_n`, localization certificates,
//!   monotonicity checks and the phase scan.
//! * [`certified`]: outward-rounded intervals, interval Taylor series and
//!   the positivity / contraction certificates.
//! * [`scaling`]: the orbit of `x ↦ 1/(n+1+x)` and the square-root cusp fit.

pub mod bounds;
pub mod certified;
pub mod cf;
mod error;
pub mod eval;
pub mod minima;
mod precision;
pub mod scaling;

pub use certified::Interval;
pub use cf::{CfSpec, ConvergentTable, DecimalSeed, QuadraticValue, Tail};
pub use error::{Error, Result};
pub use eval::{Enclosure, EvalReport, Method, SigmaParam};
pub use precision::{mpfr_version, Precision};
