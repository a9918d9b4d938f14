//! Localization of the minimum on `[1/(n+1), 1]`.
//!
//! For `n >= 2` and `ξ_n = n/(n²+1)`:
//!
//! * (a) `g` is convex and `g'(ξ_n) > 0`, so `g >= g(ξ_n)` on `[ξ_n, 1]`;
//! * (b) `g_n` is convex on `[1/(n+1), ξ_n]` with `g_n'(ξ_n) < 0`, and
//!   `g_n >= g`, so `B_σ >= g_n >= g_n(ξ_n) >= g(ξ_n)` there;
//! * (c) `g(ξ_n) > B_σ(η_{n+1})`.
//!
//! Together `B_σ > B_σ(η_{n+1})` on `[1/(n+1), 1]`. For `n = 1` the point
//! `ξ_1 = 1/2` is a cylinder endpoint and the argument degenerates; there the
//! bound comes from [`cylinder_lower_bound`] on `[1/2, 1]`, whose first
//! refinement is exactly the `g_1` bound.

use rug::{Float, Integer, Rational};

use super::search::cylinder_lower_bound;
use super::SubCheck;
use crate::bounds::{
    g_enclosure, g_k_prime_enclosure, g_prime_enclosure, verify_cylinder_dominance, BoundContext,
};
use crate::certified::series::{Analytic, Series};
use crate::certified::Interval;
use crate::error::{Error, Result};
use crate::eval::{fixed_point_enclosure, Enclosure, SigmaParam};

/// Node budget of the `n = 1` search.
const SEARCH_BUDGET: usize = 200_000;
/// Pieces allowed when certifying convexity of `g_n`.
const CONVEXITY_PIECES: usize = 256;

#[derive(Debug, Clone)]
pub struct LocalizationCertificate {
    pub n: u64,
    pub sigma: SigmaParam,
    /// `ξ_n = 1/(n + 1/n)`.
    pub xi_n: Float,
    /// The certified lower bound on `[1/(n+1), 1]`: `g(ξ_n)` for `n >= 2`,
    /// the cylinder search bound for `n = 1`.
    pub lhs: Float,
    /// `B_σ(η_{n+1})`.
    pub rhs: Enclosure,
    /// `lhs - rhs.hi`, rounded down.
    pub margin: Float,
    pub checks: Vec<SubCheck>,
    pub passed: bool,
}

/// `g_n'' / 2` over `x` by second-order interval Taylor arithmetic.
fn g_n_curvature(x: &Interval, n: u64, sigma: &Interval, b_star: &Interval) -> Result<Interval> {
    let prec = x.prec();
    let zero = Interval::from_int(0, prec);
    let konst = |v: Interval| Series::from_coeffs(vec![v, zero.clone(), zero.clone()]);
    let inv_sigma = konst(Interval::from_int(1, prec).div(sigma)?);
    let t = Series::variable(x.clone(), 2);
    let neg_pow = |y: &Series<Interval>| -> Result<Series<Interval>> { y.ln()?.times(&inv_sigma).scale(-1).exp() };
    let u = t.constant(1).over(&t)?.offset(-(n as i64));
    let one_nt = t.scale(-(n as i64)).offset(1);
    let g = neg_pow(&t)?
        .plus(&t.times(&neg_pow(&u)?))
        .plus(&one_nt.times(&konst(b_star.clone())));
    Ok(g.coeff(2).clone())
}

fn certify_convex(n: u64, lo: &Rational, hi: &Rational, sigma: &Interval, b_star: &Interval) -> Result<(bool, usize)> {
    let prec = sigma.prec();
    let mut pending = vec![(lo.clone(), hi.clone())];
    let mut pieces = 0usize;
    while let Some((a, b)) = pending.pop() {
        let x = Interval::new(
            Interval::from_rational(&a, prec).lo().clone(),
            Interval::from_rational(&b, prec).hi().clone(),
        )?;
        let c = g_n_curvature(&x, n, sigma, b_star)?;
        if c.is_positive() {
            pieces += 1;
            continue;
        }
        if pieces + pending.len() >= CONVEXITY_PIECES {
            return Ok((false, pieces));
        }
        let m = Rational::from(&a + &b) / 2u32;
        pending.push((a, m.clone()));
        pending.push((m, b));
    }
    Ok((true, pieces))
}

fn fmt_iv(x: &Interval) -> String {
    format!("[{:.12e}, {:.12e}]", x.lo().to_f64(), x.hi().to_f64())
}

/// Certifies `B_σ(x) > B_σ(η_{n+1})` for `x ∈ [1/(n+1), 1]`.
pub fn localize(n: u64, sigma: &SigmaParam) -> Result<LocalizationCertificate> {
    if n == 0 {
        return Err(Error::Domain("localize needs n >= 1".into()));
    }
    let prec = sigma.work_bits();
    let out = sigma.precision().bits();
    let s = sigma.interval(prec);
    let nn = Integer::from(n);
    let xi_q = Rational::from((nn.clone(), Integer::from(&nn * &nn) + 1u32));
    let xi = Interval::from_rational(&xi_q, prec);
    let rhs = fixed_point_enclosure(n + 1, &s, prec)?;
    let mut checks = Vec::new();

    let lhs_iv = if n == 1 {
        let found = cylinder_lower_bound(&Rational::from((1, 2)), &Rational::from(1), sigma, rhs.hi(), SEARCH_BUDGET)?;
        let route = if found.max_depth <= 1 { "g_1 bound" } else { "deeper cylinders" };
        checks.push(SubCheck::new(
            "cylinder-lower-bound",
            found.resolved,
            format!("{route}: {} nodes, prefix depth {}", found.nodes, found.max_depth),
        ));
        Interval::point(found.lower)
    } else {
        let gp = g_prime_enclosure(&xi, &s)?;
        checks.push(SubCheck::new("g-increasing-right", gp.is_positive(), format!("g'(xi) in {}", fmt_iv(&gp))));

        let b_star = crate::bounds::b_star_enclosure(&s)?;
        let left = Rational::from((1, n + 1));
        let (convex, pieces) = certify_convex(n, &left, &xi_q, &s, &b_star)?;
        checks.push(SubCheck::new(
            "g_n-convex",
            convex,
            format!("g_n'' > 0 on [1/(n+1), xi] over {pieces} pieces"),
        ));
        let gkp = g_k_prime_enclosure(&xi, n, &s)?;
        checks.push(SubCheck::new(
            "g_n-decreasing-left",
            gkp.is_negative(),
            format!("g_n'(xi) in {}", fmt_iv(&gkp)),
        ));
        let dom = verify_cylinder_dominance(n, &BoundContext::new(sigma), 64)?;
        checks.push(SubCheck::new(
            "cylinder-dominance",
            dom.passed,
            format!("min (g_n - g) = {:.3e} on samples", dom.worst_margin.to_f64()),
        ));
        g_enclosure(&xi, &s)?
    };

    let diff = lhs_iv.sub(&rhs);
    let margin = Float::with_val(out, diff.lo());
    checks.push(SubCheck::new(
        "beats-fixed-point",
        diff.is_positive(),
        format!("lhs - B(eta_{}) in {}", n + 1, fmt_iv(&diff)),
    ));
    let passed = margin > 0 && checks.iter().all(|c| c.passed);
    Ok(LocalizationCertificate {
        n,
        sigma: sigma.clone(),
        xi_n: Float::with_val(out, xi.mid()),
        lhs: Float::with_val(out, lhs_iv.mid()),
        rhs: Enclosure::from_interval(rhs),
        margin,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::Precision;

    fn sig(v: f64) -> SigmaParam {
        SigmaParam::new(v, Precision::default()).unwrap()
    }

    #[test]
    fn n_two_at_two() {
        let c = localize(2, &sig(2.0)).unwrap();
        assert!(c.passed, "{:?}", c.checks);
        assert!((c.margin.to_f64() - 0.0138138).abs() < 1e-6, "{}", c.margin);
        assert!((c.lhs.to_f64() - 2.6203693146).abs() < 1e-9);
        assert!((c.xi_n.to_f64() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn n_one_at_one() {
        let c = localize(1, &sig(1.0)).unwrap();
        assert!(c.passed, "{:?}", c.checks);
        assert!(c.margin > 0);
    }

    #[test]
    fn fails_far_above() {
        // g(ξ_2) -> 1.4 < B_σ(η_3) -> 1/(1 - η_3) as σ grows
        let c = localize(2, &sig(40.0)).unwrap();
        assert!(!c.passed);
        assert!(c.margin < 0);
    }

    #[test]
    fn curvature_matches_finite_difference() {
        let s = 2.5f64;
        let b = (s + 1.0).powf(1.0 + 1.0 / s) / s;
        let g3 = |x: f64| x.powf(-1.0 / s) + x * (1.0 / x - 3.0).powf(-1.0 / s) + (1.0 - 3.0 * x) * b;
        let x0 = 0.29;
        let h = 1e-4;
        let fd = (g3(x0 + h) - 2.0 * g3(x0) + g3(x0 - h)) / (h * h) / 2.0;
        let si = Interval::ratio(5, 2, 200);
        let bi = crate::bounds::b_star_enclosure(&si).unwrap();
        let c = g_n_curvature(&Interval::point(Float::with_val(200, x0)), 3, &si, &bi).unwrap();
        assert!((c.mid().to_f64() - fd).abs() < 1e-4 * fd.abs(), "{c} vs {fd}");
    }
}
