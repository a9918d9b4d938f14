//! Phase diagram of the minimizer as `σ` varies.
//!
//! At each `σ` the minimum is taken exactly over a finite family of purely
//! periodic points (closed forms), and a float net over `(0, 1)` is used as
//! a falsification check: a net point whose enclosure lies entirely below the
//! family minimum is evidence against the fixed-point conjecture. The net can
//! only refute, never certify.

use std::fmt;

use rayon::prelude::*;
use rug::{Float, Rational};

use super::sigma_star::crossing;
use crate::bounds::BoundContext;
use crate::cf::{self, CfSpec};
use crate::error::{Error, Result};
use crate::eval::{eval_periodic_exact, eval_table, Enclosure, SigmaParam};
use crate::precision::Precision;

/// Depth and precision used for net points.
const NET_DEPTH: usize = 40;
const NET_DIGITS: u32 = 25;

/// Purely periodic candidates `[0; (m)]`, `m <= max_fixed`, and
/// `[0; (m, l)]`, `m != l <= max_pair`, plus the size of the float net.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateFamily {
    pub max_fixed: u64,
    pub max_pair: u64,
    pub net_points: usize,
}

impl Default for CandidateFamily {
    fn default() -> Self {
        Self {
            max_fixed: 30,
            max_pair: 30,
            net_points: 10_000,
        }
    }
}

impl fmt::Display for CandidateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "period1<={};period2<={};net={}",
            self.max_fixed, self.max_pair, self.net_points
        )
    }
}

impl CandidateFamily {
    /// Candidates in tie-break order: shorter period first, then
    /// lexicographic in the period.
    pub fn candidates(&self) -> Vec<CfSpec> {
        let mut out: Vec<CfSpec> = (1..=self.max_fixed)
            .map(|m| CfSpec::fixed_point(m).expect("m >= 1"))
            .collect();
        for m in 1..=self.max_pair {
            for l in 1..=self.max_pair {
                if m != l {
                    out.push(CfSpec::periodic(vec![], vec![m, l]).expect("valid"));
                }
            }
        }
        out
    }

    pub fn contains(&self, spec: &CfSpec) -> bool {
        if !spec.prefix().is_empty() {
            return false;
        }
        match spec.period() {
            Some([m]) => *m <= self.max_fixed,
            Some([m, l]) => m != l && *m <= self.max_pair && *l <= self.max_pair,
            _ => false,
        }
    }
}

/// What the float net found at one `σ`.
#[derive(Debug, Clone)]
pub struct NetReport {
    pub evaluated: usize,
    /// Points skipped because `g(x)` already exceeds the family minimum.
    pub pruned: usize,
    /// Net point with the least lower bound, and that bound.
    pub best_point: Option<Float>,
    pub best_lo: Option<Float>,
    /// Some net point has a heuristic upper value below the family minimum.
    pub beats_family: bool,
}

#[derive(Debug, Clone)]
pub struct PhaseRow {
    pub sigma: SigmaParam,
    pub argmin_spec: CfSpec,
    pub min_value: Enclosure,
    pub candidate_family: CandidateFamily,
    /// The argmin differs from the previous row.
    pub transition: bool,
    /// For a transition row: a bracket for the jump, refined by bisection
    /// when both sides are fixed points, else the grid step.
    pub bracket: Option<(Rational, Rational)>,
    pub net: NetReport,
}

fn net_scan(sigma: &SigmaParam, family: &CandidateFamily, best: &Enclosure) -> Result<NetReport> {
    let precision = Precision::digits(NET_DIGITS)?;
    let s = sigma.with_precision(precision);
    let ctx = BoundContext::new(&s);
    let prec = precision.bits();
    let n = family.net_points;
    let offset = Float::with_val(prec, cf::eta_interval(1, prec).mid());
    let results: Vec<Option<(Float, Float, Float)>> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Option<(Float, Float, Float)>> {
            let x = Float::with_val(prec, &offset + i as u32) / n as u32;
            if ctx.g(&x)? > *best.hi() {
                return Ok(None);
            }
            let table = match cf::expand_float(&[], &x, NET_DEPTH, precision) {
                Ok(t) => t,
                Err(Error::RationalInput { .. }) | Err(Error::PrecisionExhausted { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let maxq = table.quotients().iter().copied().max().unwrap_or(1);
            let r = eval_table(&table, &s, Some(maxq))?;
            Ok(Some((x, r.value.lo().clone(), r.value.hi().clone())))
        })
        .collect::<Result<_>>()?;

    let mut report = NetReport {
        evaluated: 0,
        pruned: 0,
        best_point: None,
        best_lo: None,
        beats_family: false,
    };
    for r in results {
        let Some((x, lo, hi)) = r else {
            report.pruned += 1;
            continue;
        };
        report.evaluated += 1;
        if hi < *best.lo() {
            report.beats_family = true;
        }
        if report.best_lo.as_ref().map_or(true, |b| lo < *b) {
            report.best_lo = Some(lo);
            report.best_point = Some(x);
        }
    }
    Ok(report)
}

/// Minimizes `B_σ` over the family and runs the net. The returned row has
/// no transition information.
pub fn minimize_at(sigma: &SigmaParam, family: &CandidateFamily) -> Result<PhaseRow> {
    let mut best: Option<(CfSpec, Enclosure)> = None;
    for spec in family.candidates() {
        let v = eval_periodic_exact(&spec, sigma)?.value;
        let better = match &best {
            None => true,
            Some((_, b)) => v.hi() < b.lo(),
        };
        if better {
            best = Some((spec, v));
        }
    }
    let (argmin_spec, min_value) =
        best.ok_or_else(|| Error::Domain("empty candidate family".into()))?;
    let net = if family.net_points > 0 {
        net_scan(sigma, family, &min_value)?
    } else {
        NetReport {
            evaluated: 0,
            pruned: 0,
            best_point: None,
            best_lo: None,
            beats_family: false,
        }
    };
    Ok(PhaseRow {
        sigma: sigma.clone(),
        argmin_spec,
        min_value,
        candidate_family: family.clone(),
        transition: false,
        bracket: None,
        net,
    })
}

fn fixed_index(spec: &CfSpec) -> Option<u64> {
    match (spec.prefix(), spec.period()) {
        ([], Some([m])) => Some(*m),
        _ => None,
    }
}

/// Scans `steps` equally spaced values of `σ` in `[sigma_lo, sigma_hi]`.
pub fn phase_scan(
    sigma_lo: &Rational,
    sigma_hi: &Rational,
    steps: usize,
    family: &CandidateFamily,
    precision: Precision,
) -> Result<Vec<PhaseRow>> {
    if !(*sigma_lo > 0 && sigma_lo < sigma_hi) || steps < 2 {
        return Err(Error::Domain("need 0 < sigma_lo < sigma_hi and steps >= 2".into()));
    }
    let span = Rational::from(sigma_hi - sigma_lo);
    let grid: Vec<Rational> = (0..steps)
        .map(|i| sigma_lo + Rational::from(&span * i as u64) / (steps as u64 - 1))
        .collect();
    let mut rows: Vec<PhaseRow> = grid
        .par_iter()
        .map(|s| minimize_at(&SigmaParam::from_rational(s.clone(), precision)?, family))
        .collect::<Result<_>>()?;

    let tol = Rational::from((1, 10_000_000_000u64));
    for i in 1..rows.len() {
        if rows[i].argmin_spec == rows[i - 1].argmin_spec {
            continue;
        }
        rows[i].transition = true;
        let (a, b) = (grid[i - 1].clone(), grid[i].clone());
        let refined = match (fixed_index(&rows[i - 1].argmin_spec), fixed_index(&rows[i].argmin_spec)) {
            (Some(m), Some(l)) => crossing(m, l, &a, &b, &tol, precision).ok(),
            _ => None,
        };
        rows[i].bracket = Some(refined.unwrap_or((a, b)));
    }
    Ok(rows)
}
