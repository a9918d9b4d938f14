//! Where `B_σ` attains its minimum.
//!
//! The minimum is conjectured to sit at a fixed point `η_m` of the Gauss
//! map, jumping from `η_n` to `η_{n+1}` at `σ*_n`. This module computes the
//! crossing values, certifies the localization lemmas for `σ` near an
//! integer, checks the monotonicity propositions that pin the minimizer to
//! `η_{n+1}` inside `(0, 1/(n+1)]`, and scans `σ` for the phase diagram.

mod localize;
mod monotonicity;
mod phase;
mod search;
mod sigma_star;

use std::fmt;

pub use localize::{localize, LocalizationCertificate};
pub use monotonicity::{monotonicity_checks, MonotonicityCertificate};
pub use phase::{minimize_at, phase_scan, CandidateFamily, NetReport, PhaseRow};
pub use search::{cylinder_lower_bound, CylinderBound};
pub use sigma_star::{crossing, fixed_point_gap, sigma_star, sigma_star_asymptote};

/// One named step of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SubCheck {
    pub(crate) fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for SubCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "pass" } else { "fail" };
        write!(f, "{}: {mark} ({})", self.name, self.detail)
    }
}
