//! Regular continued fractions: Gauss map, convergents, Gauss iterates,
//! `β` products and quadratic irrationals.

mod gauss;
mod quadratic;
mod spec;
mod table;

pub use gauss::gauss_step;
pub use quadratic::{eta, eta_interval, orbit_enclosures, quadratic_from_periodic, QuadraticValue};
pub use spec::{CfSpec, DecimalSeed, Tail, QUOTIENT_CAP};
pub use table::{expand, expand_float, growth_exponent, growth_profile, ConvergentTable};
