//! A-priori lower bounds for `B_σ`.
//!
//! From the functional equation and `B_σ >= b` one gets `B_σ >= φ(b)` with
//! `φ(b) = (bσ)^{1/(σ+1)} (1 + 1/σ)`, whose attracting fixed point is
//! `b* = (σ+1)^{1+1/σ}/σ`. Hence `B_σ(x) >= g(x) = x^{-1/σ} + b* x`, and on
//! the cylinder `(1/(k+1), 1/k)` the sharper
//! `g_k(x) = x^{-1/σ} + x (1/x - k)^{-1/σ} + (1 - kx) b*`, which touches `g`
//! at `p = 1/(k + 1/(σ+1))`.

use rug::float::Special;
use rug::ops::Pow;
use rug::Float;

use crate::certified::Interval;
use crate::error::{Error, Result};
use crate::eval::{neg_power, SigmaParam};

/// `σ` with `b*` evaluated at the working precision.
#[derive(Debug, Clone)]
pub struct BoundContext {
    sigma: SigmaParam,
    s: Float,
    b_star: Float,
}

impl BoundContext {
    pub fn new(sigma: &SigmaParam) -> Self {
        let prec = sigma.precision().bits();
        let s = Float::with_val(prec, sigma.sigma());
        let e = Float::with_val(prec, 1 + Float::with_val(prec, s.recip_ref()));
        let b_star = Float::with_val(prec, &s + 1u32).pow(e) / &s;
        Self {
            sigma: sigma.clone(),
            s,
            b_star,
        }
    }

    pub fn sigma(&self) -> &SigmaParam {
        &self.sigma
    }

    pub fn prec(&self) -> u32 {
        self.s.prec()
    }

    /// `b* = (σ+1)^{1+1/σ}/σ`.
    pub fn b_star(&self) -> &Float {
        &self.b_star
    }

    /// `φ(b) = (bσ)^{1/(σ+1)} (1 + 1/σ)`.
    pub fn phi(&self, b: &Float) -> Float {
        let prec = self.prec();
        let e = Float::with_val(prec, &self.s + 1u32).recip();
        let base = Float::with_val(prec, b * &self.s);
        base.pow(e) * Float::with_val(prec, 1 + Float::with_val(prec, self.s.recip_ref()))
    }

    /// `x^{-1/σ}`.
    fn pw(&self, x: &Float) -> Float {
        let prec = self.prec();
        (-(Float::with_val(prec, x.ln_ref()) / &self.s)).exp()
    }

    fn check_unit(x: &Float) -> Result<()> {
        if !(x.is_finite() && *x > 0 && *x <= 1) {
            return Err(Error::Domain(format!("x must lie in (0, 1], got {x}")));
        }
        Ok(())
    }

    /// `g(x) = x^{-1/σ} + b* x`.
    pub fn g(&self, x: &Float) -> Result<Float> {
        Self::check_unit(x)?;
        Ok(self.pw(x) + Float::with_val(self.prec(), &self.b_star * x))
    }

    /// `g'(x) = -x^{-1/σ-1}/σ + b*`.
    pub fn g_prime(&self, x: &Float) -> Result<Float> {
        Self::check_unit(x)?;
        let t = self.pw(x) / x / &self.s;
        Ok(Float::with_val(self.prec(), &self.b_star - t))
    }

    /// The minimizer `(b* σ)^{-σ/(σ+1)}` of `g`, where `g = b*`.
    pub fn g_minimizer(&self) -> Float {
        let prec = self.prec();
        let e = -(Float::with_val(prec, &self.s / Float::with_val(prec, &self.s + 1u32)));
        Float::with_val(prec, &self.b_star * &self.s).pow(e)
    }

    /// `p = 1/(k + 1/(σ+1))`, where `g_k` touches `g`.
    pub fn tangency_point(&self, k: u64) -> Float {
        let prec = self.prec();
        let inv = Float::with_val(prec, &self.s + 1u32).recip();
        Float::with_val(prec, inv + k).recip()
    }

    /// `1/x - k`, checked against `(1/(k+1), 1/k]`, or `None` when it is so
    /// small that `g_k` is reported as `+∞`.
    fn cylinder_gap(&self, x: &Float, k: u64) -> Result<Option<Float>> {
        if k == 0 {
            return Err(Error::Domain("cylinder index k must be >= 1".into()));
        }
        let prec = self.prec();
        let u = Float::with_val(prec, x.recip_ref()) - k;
        if !(x.is_finite() && (0..1).contains(&u)) {
            return Err(Error::Domain(format!("x = {x} is outside the cylinder (1/{}, 1/{k})", k + 1)));
        }
        let digits = self.sigma.precision().get() as i32;
        let floor = Float::with_val(53, 10f64).pow(-(digits / 2));
        Ok((u >= floor).then_some(u))
    }

    /// `g_k(x) = x^{-1/σ} + x(1/x - k)^{-1/σ} + (1 - kx) b*` on the cylinder.
    pub fn g_k(&self, x: &Float, k: u64) -> Result<Float> {
        let prec = self.prec();
        let Some(u) = self.cylinder_gap(x, k)? else {
            return Ok(Float::with_val(prec, Special::Infinity));
        };
        let one_kx = Float::with_val(prec, 1 - Float::with_val(prec, x * k));
        Ok(self.pw(x) + Float::with_val(prec, x * self.pw(&u)) + one_kx * &self.b_star)
    }

    /// `g_k'(x) = -x^{-1/σ-1}/σ + u^{-1/σ} + u^{-1/σ-1}/(σx) - k b*`, `u = 1/x - k`.
    pub fn g_k_prime(&self, x: &Float, k: u64) -> Result<Float> {
        let prec = self.prec();
        let Some(u) = self.cylinder_gap(x, k)? else {
            return Ok(Float::with_val(prec, Special::Infinity));
        };
        let pu = self.pw(&u);
        let a = self.pw(x) / x / &self.s;
        let c = Float::with_val(prec, &pu / &u) / x / &self.s;
        let kb = Float::with_val(prec, &self.b_star * k);
        Ok(pu - a + c - kb)
    }
}

/// The sequence `b_1 = 1`, `b_{k+1} = φ(b_k)`.
#[derive(Debug, Clone)]
pub struct BStarIteration {
    pub values: Vec<Float>,
    /// `|b_k - b*| < 10^-12` at the last index.
    pub converged: bool,
    pub strictly_increasing: bool,
}

/// Iterates `φ` from `b_1 = 1` until within `10^-12` of `b*` or `k_max` terms.
pub fn b_star_iterate(sigma: &SigmaParam, k_max: usize) -> Result<BStarIteration> {
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let ctx = BoundContext::new(sigma);
    let prec = ctx.prec();
    let mut values = vec![Float::with_val(prec, 1)];
    let close = |b: &Float| Float::with_val(prec, b - ctx.b_star()).abs() < 1e-12;
    while values.len() < k_max && !close(values.last().unwrap()) {
        let next = ctx.phi(values.last().unwrap());
        values.push(next);
    }
    let strictly_increasing = values.windows(2).all(|w| w[1] > w[0]);
    Ok(BStarIteration {
        converged: close(values.last().unwrap()),
        values,
        strictly_increasing,
    })
}

/// Result of [`verify_cylinder_dominance`].
#[derive(Debug, Clone)]
pub struct DominanceCertificate {
    pub k: u64,
    pub passed: bool,
    /// Smallest `g_k - g` over the samples, and where it occurs.
    pub worst_margin: Float,
    pub worst_x: Float,
    /// `|g_k(p) - g(p)|` and `|g_k'(p) - g'(p)|`.
    pub tangency_gap: Float,
    pub tangency_slope_gap: Float,
    /// All second divided differences of `g_k - g` are nonnegative.
    pub convex: bool,
    /// Samples where `g_k < g` beyond tolerance.
    pub violations: Vec<Float>,
}

/// Checks `g_k >= g` on Chebyshev samples of `(1/(k+1), 1/k)`, convexity of
/// `g_k - g` by second divided differences, and tangency at `p`.
pub fn verify_cylinder_dominance(k: u64, ctx: &BoundContext, samples: usize) -> Result<DominanceCertificate> {
    if k == 0 || samples < 3 {
        return Err(Error::Domain("need k >= 1 and at least 3 samples".into()));
    }
    let prec = ctx.prec();
    let tol = Float::with_val(prec, 1e-10);
    let a = Float::with_val(prec, k + 1).recip();
    let b = Float::with_val(prec, k).recip();
    let mid = Float::with_val(prec, &a + &b) / 2;
    let half = Float::with_val(prec, &b - &a) / 2;
    let pi = Float::with_val(prec, rug::float::Constant::Pi);

    let mut pts: Vec<(Float, Float)> = Vec::with_capacity(samples);
    for i in (0..samples).rev() {
        let theta = Float::with_val(prec, &pi * (2 * i + 1) as u32) / (2 * samples) as u32;
        let x = Float::with_val(prec, &half * theta.cos()) + &mid;
        let m = Float::with_val(prec, ctx.g_k(&x, k)? - ctx.g(&x)?);
        pts.push((x, m));
    }

    let mut worst = pts[0].clone();
    let mut violations = Vec::new();
    for (x, m) in &pts {
        if *m < worst.1 {
            worst = (x.clone(), m.clone());
        }
        if *m < -tol.clone() {
            violations.push(x.clone());
        }
    }

    let finite: Vec<&(Float, Float)> = pts.iter().filter(|(_, m)| m.is_finite()).collect();
    let convex = finite.windows(3).all(|w| {
        let s1 = Float::with_val(prec, &w[1].1 - &w[0].1) / Float::with_val(prec, &w[1].0 - &w[0].0);
        let s2 = Float::with_val(prec, &w[2].1 - &w[1].1) / Float::with_val(prec, &w[2].0 - &w[1].0);
        s2 - s1 >= -tol.clone()
    });

    let p = ctx.tangency_point(k);
    let tangency_gap = Float::with_val(prec, ctx.g_k(&p, k)? - ctx.g(&p)?).abs();
    let tangency_slope_gap = Float::with_val(prec, ctx.g_k_prime(&p, k)? - ctx.g_prime(&p)?).abs();

    let passed = violations.is_empty() && convex && tangency_gap < tol && tangency_slope_gap < tol;
    Ok(DominanceCertificate {
        k,
        passed,
        worst_margin: worst.1,
        worst_x: worst.0,
        tangency_gap,
        tangency_slope_gap,
        convex,
        violations,
    })
}

/// Enclosure of `b* = (σ+1)^{1+1/σ}/σ`.
pub fn b_star_enclosure(sigma: &Interval) -> Result<Interval> {
    let prec = sigma.prec();
    let one = Interval::from_int(1, prec);
    let e = one.add(&one.div(sigma)?);
    sigma.add_int(1).ln()?.mul(&e).exp().div(sigma)
}

/// Enclosure of `g(x)` for `x ⊆ (0, 1]`.
pub fn g_enclosure(x: &Interval, sigma: &Interval) -> Result<Interval> {
    Ok(neg_power(x, sigma)?.add(&b_star_enclosure(sigma)?.mul(x)))
}

/// Enclosure of `g'(x)`.
pub fn g_prime_enclosure(x: &Interval, sigma: &Interval) -> Result<Interval> {
    let t = neg_power(x, sigma)?.div(x)?.div(sigma)?;
    Ok(b_star_enclosure(sigma)?.sub(&t))
}

/// Enclosure of `g_k(x)` for `x` inside the cylinder `(1/(k+1), 1/k)`.
pub fn g_k_enclosure(x: &Interval, k: u64, sigma: &Interval) -> Result<Interval> {
    let u = x.recip()?.add_int(-(k as i64));
    let one_kx = Interval::from_int(1, x.prec()).sub(&x.mul_int(k as i64));
    Ok(neg_power(x, sigma)?
        .add(&x.mul(&neg_power(&u, sigma)?))
        .add(&one_kx.mul(&b_star_enclosure(sigma)?)))
}

/// Enclosure of `g_k'(x)`.
pub fn g_k_prime_enclosure(x: &Interval, k: u64, sigma: &Interval) -> Result<Interval> {
    let u = x.recip()?.add_int(-(k as i64));
    let pu = neg_power(&u, sigma)?;
    let a = neg_power(x, sigma)?.div(x)?.div(sigma)?;
    let c = pu.div(&u)?.div(x)?.div(sigma)?;
    let kb = b_star_enclosure(sigma)?.mul_int(k as i64);
    Ok(pu.sub(&a).add(&c).sub(&kb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::Precision;

    fn ctx(s: f64) -> BoundContext {
        BoundContext::new(&SigmaParam::new(s, Precision::default()).unwrap())
    }

    fn f(v: f64) -> Float {
        Float::with_val(200, v)
    }

    #[test]
    fn b_star_values() {
        assert!((ctx(1.0).b_star().to_f64() - 4.0).abs() < 1e-15);
        assert!((ctx(2.0).b_star().to_f64() - 2.598076211353316).abs() < 1e-14);
        let c = ctx(1.0);
        assert!((c.phi(&f(1.0)).to_f64() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn g_values() {
        let c = ctx(1.0);
        assert!((c.g(&f(0.5)).unwrap().to_f64() - 4.0).abs() < 1e-15);
        assert!((c.g_minimizer().to_f64() - 0.5).abs() < 1e-15);
        let c2 = ctx(2.0);
        assert!((c2.g(&f(0.4)).unwrap().to_f64() - 2.6203693146).abs() < 1e-9);
        let one = c2.g(&f(1.0)).unwrap();
        assert!(Float::with_val(200, &one - c2.b_star()).to_f64() - 1.0 < 1e-15);
        assert!(c2.g(&f(0.0)).is_err());
    }

    #[test]
    fn g_k_values_and_domain() {
        let c = ctx(2.0);
        assert!((c.g_k(&f(0.4), 2).unwrap().to_f64() - 2.6664395).abs() < 1e-6);
        assert!(c.g_k(&f(0.6), 2).is_err());
        let c1 = ctx(1.0);
        let near_one = Float::with_val(200, 1) - Float::with_val(200, 1e-40);
        assert!(c1.g_k(&near_one, 1).unwrap().is_infinite());
    }

    #[test]
    fn iteration_converges_upwards() {
        for s in [0.5, 1.0, 2.0, 5.0] {
            let it = b_star_iterate(&SigmaParam::new(s, Precision::default()).unwrap(), 500).unwrap();
            assert!(it.converged && it.strictly_increasing, "sigma = {s}");
        }
        let short = b_star_iterate(&SigmaParam::new(0.5, Precision::default()).unwrap(), 3).unwrap();
        assert!(!short.converged);
        assert_eq!(short.values.len(), 3);
    }

    #[test]
    fn dominance() {
        for (s, k) in [(3.0, 1), (3.0, 4), (2.0, 5), (1.0, 1)] {
            let cert = verify_cylinder_dominance(k, &ctx(s), 200).unwrap();
            assert!(cert.passed, "sigma {s} k {k}: {cert:?}");
        }
    }

    #[test]
    fn interval_versions_agree() {
        let s = Interval::from_int(2, 200);
        let x = Interval::point(f(0.4));
        let g = g_enclosure(&x, &s).unwrap();
        assert!((g.mid().to_f64() - ctx(2.0).g(&f(0.4)).unwrap().to_f64()).abs() < 1e-14);
        let gk = g_k_prime_enclosure(&x, 2, &s).unwrap();
        assert!((gk.mid().to_f64() - ctx(2.0).g_k_prime(&f(0.4), 2).unwrap().to_f64()).abs() < 1e-12);
    }
}
