//! Outward-rounded interval arithmetic and the certificates built on it.
//!
//! [`Interval`] uses MPFR's directed rounding for every endpoint. On top of
//! it, [`series`] provides Taylor arithmetic, [`lemma`] the comparison
//! functions `γ`, `β`, `r`, `w`, `Ψ`, and the two certificate modules
//! prove `F' <= 1/2` on `[0, 1/10]` and `w > 0`, `Ψ < 0` by adaptive
//! subdivision.

mod contraction;
mod interval;
pub mod lemma;
mod positivity;
pub mod series;

use rayon::prelude::*;
use rug::Float;
use std::fmt;

pub use contraction::{verify_contraction, ContractionCertificate, PieceBound};
pub use interval::Interval;
pub use positivity::{
    check_w_positive, localization_margin, psi_negative, w_positive_on, MarginEntry, SignCertificate, SignPiece,
    WPositiveCertificate,
};

/// Outcome of a certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Certified,
    /// The claim could not be decided within the given budget.
    Inconclusive,
    /// Some enclosure contradicts the claim.
    Refuted,
}

impl Verdict {
    /// Process exit code: 0 certified, 1 refuted, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn is_certified(self) -> bool {
        self == Verdict::Certified
    }

    /// The weaker of two verdicts; a refutation dominates.
    pub fn and(self, other: Self) -> Self {
        use Verdict::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Certified,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Refuted => "refuted",
        })
    }
}

/// What a piece check concluded, with whatever bounds it computed.
pub(crate) enum Outcome<R> {
    Pass(R),
    Split(R),
    Refute(R),
}

/// Bisects `root` breadth first until every piece passes `check`, some piece
/// refutes, or the number of pieces would exceed `limit`. Pieces of a level
/// are checked in parallel; the result is sorted by position.
pub(crate) fn subdivide<R, F>(root: Interval, limit: usize, check: F) -> (Vec<(Interval, R)>, Verdict)
where
    R: Send,
    F: Fn(&Interval) -> Outcome<R> + Sync,
{
    let mut frontier = vec![root];
    let mut pieces = 1usize;
    let mut done: Vec<(Interval, R)> = Vec::new();
    let mut verdict = Verdict::Certified;
    while !frontier.is_empty() {
        let results: Vec<(Interval, Outcome<R>)> = frontier
            .into_par_iter()
            .map(|x| {
                let o = check(&x);
                (x, o)
            })
            .collect();
        let mut next = Vec::new();
        for (x, outcome) in results {
            match outcome {
                Outcome::Pass(r) => done.push((x, r)),
                Outcome::Refute(r) => {
                    verdict = Verdict::Refuted;
                    done.push((x, r));
                }
                Outcome::Split(r) => {
                    if verdict == Verdict::Refuted || pieces >= limit {
                        verdict = verdict.and(Verdict::Inconclusive);
                        done.push((x, r));
                    } else {
                        pieces += 1;
                        let (a, b) = x.bisect();
                        next.push(a);
                        next.push(b);
                    }
                }
            }
        }
        frontier = next;
    }
    done.sort_by(|a, b| a.0.lo().partial_cmp(b.0.lo()).expect("finite endpoints"));
    (done, verdict)
}

/// `[0, 0.1]` with the right endpoint rounded up.
pub(crate) fn unit_tenth(prec: u32) -> Interval {
    let tenth = Interval::ratio(1, 10, prec);
    Interval::new(Float::with_val(prec, 0), tenth.hi().clone()).expect("ordered")
}
