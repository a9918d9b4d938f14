//! Certified lower bounds for `B_σ` over an interval, by branch and bound
//! on continued-fraction cylinders.
//!
//! A node is a prefix `a_1..a_k` together with a rational interval `Y` for
//! the tail `x_k`, i.e. the set `x = [0; a_1, ..., a_k + y]`, `y ∈ Y`. On it
//!
//! ```text
//! B_σ(x) = Σ_{j<k} β_{j-1} x_j^{-1/σ} + β_{k-1} B_σ(x_k)
//!        >= Σ_{j<k} β_{j-1} x_j^{-1/σ} + β_{k-1} min_Y g
//! ```
//!
//! and every `x_j` is a Möbius image of `Y`, so the right side has a
//! straightforward interval enclosure. Nodes whose bound does not clear the
//! target are refined: split `Y` at a cylinder boundary, or, when `Y` sits in
//! a single cylinder `[1/(j+1), 1/j]`, append `j` to the prefix. With an
//! empty prefix the node bound is `min_Y g`; after one extension it is the
//! cylinder bound `g_j`.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::bounds::{b_star_enclosure, g_enclosure, g_prime_enclosure};
use crate::certified::Interval;
use crate::error::{Error, Result};
use crate::eval::{neg_power, SigmaParam};

/// Outcome of [`cylinder_lower_bound`].
#[derive(Debug, Clone)]
pub struct CylinderBound {
    /// Certified lower bound of `B_σ` on the region: the least node bound
    /// over the final partition.
    pub lower: Float,
    /// Every node of the final partition clears the target.
    pub resolved: bool,
    pub nodes: usize,
    /// Longest prefix used.
    pub max_depth: usize,
}

#[derive(Debug, Clone)]
struct Node {
    prefix: Vec<u64>,
    lo: Rational,
    hi: Rational,
}

struct Ctx {
    sigma: Interval,
    b_star: Interval,
    prec: u32,
}

fn rat_interval(lo: &Rational, hi: &Rational, prec: u32) -> Interval {
    let a = Interval::from_rational(lo, prec);
    let b = Interval::from_rational(hi, prec);
    Interval::new(a.lo().clone(), b.hi().clone()).expect("ordered")
}

impl Ctx {
    /// Lower bound of `min_Y g` using convexity of `g`.
    fn g_min(&self, lo: &Rational, hi: &Rational) -> Result<Float> {
        let p = self.prec;
        let at = |r: &Rational| Interval::from_rational(r, p);
        if *hi > 0 && g_prime_enclosure(&at(hi), &self.sigma)?.is_negative() {
            return Ok(g_enclosure(&at(hi), &self.sigma)?.lo().clone());
        }
        if *lo > 0 && g_prime_enclosure(&at(lo), &self.sigma)?.is_positive() {
            return Ok(g_enclosure(&at(lo), &self.sigma)?.lo().clone());
        }
        Ok(self.b_star.lo().clone())
    }

    fn bound(&self, node: &Node) -> Result<Float> {
        let p = self.prec;
        let mut x = rat_interval(&node.lo, &node.hi, p);
        let mut xs = Vec::with_capacity(node.prefix.len());
        for &a in node.prefix.iter().rev() {
            x = Interval::from_integer(&Integer::from(a), p).add(&x).recip()?;
            xs.push(x.clone());
        }
        xs.reverse();
        let mut sum = Interval::from_int(0, p);
        let mut beta = Interval::from_int(1, p);
        for xj in &xs {
            sum = sum.add(&beta.mul(&neg_power(xj, &self.sigma)?));
            beta = beta.mul(xj);
        }
        let tail = Interval::point(self.g_min(&node.lo, &node.hi)?);
        Ok(sum.add(&beta.mul(&tail)).lo().clone())
    }
}

/// `⌊1/r⌋` for `r > 0`.
fn floor_recip(r: &Rational) -> Integer {
    let inv = Rational::from(r.recip_ref());
    inv.floor().numer().clone()
}

/// Children of a node that failed to clear the target.
fn refine(node: &Node) -> Result<Vec<Node>> {
    let child = |lo: Rational, hi: Rational| Node {
        prefix: node.prefix.clone(),
        lo,
        hi,
    };
    if node.lo == 0 {
        // split off [0, 1/j] with 1/j <= hi/2
        let j = Rational::from(2u32 / &node.hi).ceil();
        let cut = Rational::from(j.recip_ref());
        return Ok(vec![child(Rational::new(), cut.clone()), child(cut, node.hi.clone())]);
    }
    // cylinders [1/(j+1), 1/j] touched by [lo, hi]
    let jmin = floor_recip(&node.hi);
    let jmax = Rational::from(node.lo.recip_ref()).ceil().numer().clone() - 1u32;
    if jmin >= jmax {
        let j = jmin;
        let a = j.to_u64().ok_or_else(|| Error::QuotientCap { quotient: j.to_string() })?;
        let lo = Rational::from(node.hi.recip_ref()) - &j;
        let hi = Rational::from(node.lo.recip_ref()) - &j;
        let mut prefix = node.prefix.clone();
        prefix.push(a);
        return Ok(vec![Node { prefix, lo, hi }]);
    }
    let jb: Integer = (Integer::from(&jmin + 1u32) + &jmax) / 2u32;
    let cut = Rational::from((Integer::from(1), jb));
    Ok(vec![child(node.lo.clone(), cut.clone()), child(cut, node.hi.clone())])
}

/// Certified lower bound of `B_σ` on `[lo, hi] ⊆ [0, 1]`, refining until
/// every piece exceeds `target` or `budget` nodes have been examined.
pub fn cylinder_lower_bound(
    lo: &Rational,
    hi: &Rational,
    sigma: &SigmaParam,
    target: &Float,
    budget: usize,
) -> Result<CylinderBound> {
    if *lo < 0 || *hi > 1 || lo >= hi {
        return Err(Error::Domain(format!("need 0 <= lo < hi <= 1, got [{lo}, {hi}]")));
    }
    let prec = sigma.work_bits();
    let s = sigma.interval(prec);
    let ctx = Ctx {
        b_star: b_star_enclosure(&s)?,
        sigma: s,
        prec,
    };
    let mut frontier = vec![Node {
        prefix: Vec::new(),
        lo: lo.clone(),
        hi: hi.clone(),
    }];
    let mut nodes = 0usize;
    let mut max_depth = 0usize;
    let mut lower: Option<Float> = None;
    let mut resolved = true;
    let mut keep_min = |v: &Float| {
        if lower.as_ref().map_or(true, |l| v < l) {
            lower = Some(v.clone());
        }
    };
    while !frontier.is_empty() {
        let bounds: Vec<Result<Float>> = frontier.par_iter().map(|n| ctx.bound(n)).collect();
        nodes += frontier.len();
        let mut next = Vec::new();
        for (node, b) in frontier.into_iter().zip(bounds) {
            max_depth = max_depth.max(node.prefix.len());
            let b = b?;
            if b > *target {
                keep_min(&b);
            } else if nodes + next.len() >= budget {
                resolved = false;
                keep_min(&b);
            } else {
                next.extend(refine(&node)?);
            }
        }
        frontier = next;
    }
    Ok(CylinderBound {
        lower: lower.expect("at least one node"),
        resolved,
        nodes,
        max_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::fixed_point_value;
    use crate::precision::Precision;

    fn sig(v: f64) -> SigmaParam {
        SigmaParam::new(v, Precision::digits(30).unwrap()).unwrap()
    }

    #[test]
    fn refine_extends_inside_a_cylinder() {
        let n = Node {
            prefix: vec![],
            lo: Rational::from((1, 2)),
            hi: Rational::from(1),
        };
        let c = refine(&n).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].prefix, vec![1]);
        assert_eq!((c[0].lo.clone(), c[0].hi.clone()), (Rational::new(), Rational::from(1)));
    }

    #[test]
    fn refine_splits_across_cylinders() {
        let n = Node {
            prefix: vec![2],
            lo: Rational::from((1, 10)),
            hi: Rational::from((1, 2)),
        };
        let c = refine(&n).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].hi, c[1].lo);
        assert!(c.iter().all(|k| k.prefix == vec![2]));
    }

    #[test]
    fn bound_is_below_known_values() {
        // B_1 on [1/2, 1] is at least B_1(η_2) and the minimum is near η_1
        let s = sig(1.0);
        let target = fixed_point_value(2, &s).unwrap().hi().clone();
        let r = cylinder_lower_bound(&Rational::from((1, 2)), &Rational::from(1), &s, &target, 50_000).unwrap();
        assert!(r.resolved, "{r:?}");
        let at_golden = fixed_point_value(1, &s).unwrap();
        assert!(r.lower <= *at_golden.lo());
    }

    #[test]
    fn unresolvable_region_reports_budget() {
        // η_1 lies in [1/2, 1] and B_1(η_1) is below the target
        let s = sig(1.0);
        let target = Float::with_val(64, 10);
        let r = cylinder_lower_bound(&Rational::from((1, 2)), &Rational::from(1), &s, &target, 2000).unwrap();
        assert!(!r.resolved);
        assert!(r.lower < 10);
    }
}
