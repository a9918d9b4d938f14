//! The two monotonicity arguments that pin a minimizer `r ∈ (0, 1/(n+1)]`
//! to `η_{n+1}`, valid while `σ < n + η_{n+1}`:
//!
//! * `h_σ(x) = x^{-1/σ}/(1-x)` has `h_σ' ∝ (1+σ)x - 1`, so it decreases on
//!   `(0, η_{n+1}]` and `r >= η_{n+1}`;
//! * `f_σ(x) = [x^{-1-1/σ} + (1/x - (n+1))^{-1/σ}]/(n+1)` is convex on the
//!   cylinder with `(n+1) f_σ'(η) = σ^{-1} η^{-2-1/σ} (n+1+η - (σ+1)) > 0`,
//!   so it increases on `[η_{n+1}, 1/(n+1)]` and `r <= η_{n+1}`.
//!
//! `n = 0` is allowed: it covers `σ < η_1` with minimizer `η_1`.

use rug::Float;

use super::SubCheck;
use crate::certified::Interval;
use crate::cf::eta_interval;
use crate::error::{Error, Result};
use crate::eval::{neg_power, SigmaParam};

const SAMPLES: i64 = 64;

#[derive(Debug, Clone)]
pub struct MonotonicityCertificate {
    pub n: u64,
    pub sigma: SigmaParam,
    pub checks: Vec<SubCheck>,
    pub passed: bool,
}

/// `h_σ'(x) = ((1+σ)x - 1) / (σ (1-x)² x^{1+1/σ})`.
fn h_prime(x: &Interval, s: &Interval) -> Result<Interval> {
    let one = Interval::from_int(1, x.prec());
    let num = s.add(&one).mul(x).sub(&one);
    let den = s.mul(&one.sub(x).sqr()).mul(x).div(&neg_power(x, s)?)?;
    num.div(&den)
}

/// `(n+1) f_σ'(x) = σ^{-1} [x^{-2} u^{-1-1/σ} - (σ+1) x^{-2-1/σ}]`, `u = 1/x - (n+1)`.
fn f_prime_scaled(x: &Interval, n: u64, s: &Interval) -> Result<Interval> {
    let u = x.recip()?.add_int(-(n as i64 + 1));
    let x2 = x.sqr();
    let a = neg_power(&u, s)?.div(&u)?.div(&x2)?;
    let b = neg_power(x, s)?.div(&x2)?.mul(&s.add_int(1));
    a.sub(&b).div(s)
}

fn fmt_iv(x: &Interval) -> String {
    format!("[{:.6e}, {:.6e}]", x.lo().to_f64(), x.hi().to_f64())
}

/// Runs the `h_σ` and `f_σ` checks for the cylinder of `η_{n+1}`.
///
/// `σ >= n + η_{n+1}` gives [`Error::Precondition`].
pub fn monotonicity_checks(n: u64, sigma: &SigmaParam) -> Result<MonotonicityCertificate> {
    let prec = sigma.work_bits();
    let s = sigma.interval(prec);
    let eta = eta_interval(n + 1, prec);
    let bound = eta.add_int(n as i64);
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail
    if !(s.hi() < bound.lo()) {
        return Err(Error::Precondition(format!(
            "sigma = {sigma} must be below n + eta_(n+1) = {:.12}",
            bound.mid().to_f64()
        )));
    }
    let mut checks = Vec::new();

    // h' < 0 on (0, η]: the numerator is increasing, so its sign at η decides;
    // the samples exercise the full formula.
    let at_eta = s.add_int(1).mul(&eta).add_int(-1);
    let mut ok = at_eta.is_negative();
    let mut worst = Float::with_val(53, f64::NEG_INFINITY);
    for i in 1..=SAMPLES {
        let x = eta.mul(&Interval::ratio(i, SAMPLES, prec));
        let hp = h_prime(&x, &s)?;
        ok &= hp.is_negative();
        if *hp.hi() > worst {
            worst = Float::with_val(53, hp.hi());
        }
    }
    checks.push(SubCheck::new(
        "h-decreasing",
        ok,
        format!("(1+sigma) eta - 1 in {}; max h' over samples {:.3e}", fmt_iv(&at_eta), worst.to_f64()),
    ));

    // closed form at η, cross-checked with the general formula
    let closed = neg_power(&eta, &s)?
        .div(&eta.sqr())?
        .mul(&eta.add_int(n as i64 + 1).sub(&s.add_int(1)))
        .div(&s)?;
    let direct = f_prime_scaled(&eta, n, &s)?;
    let agree = closed.sub(&direct).mag() <= Float::with_val(prec, closed.mag()) * Float::with_val(prec, 1e-30);
    checks.push(SubCheck::new(
        "f-slope-at-eta",
        closed.is_positive() && agree,
        format!("(n+1) f'(eta) in {}", fmt_iv(&closed)),
    ));

    // f' > 0 on samples of [η, 1/(n+1))
    let right = Interval::ratio(1, n as i64 + 1, prec);
    let span = right.sub(&eta);
    let mut ok = true;
    let mut least = Float::with_val(53, f64::INFINITY);
    for i in 0..SAMPLES {
        let x = eta.add(&span.mul(&Interval::ratio(i, SAMPLES, prec)));
        let fp = f_prime_scaled(&x, n, &s)?;
        ok &= fp.is_positive();
        if *fp.lo() < least {
            least = Float::with_val(53, fp.lo());
        }
    }
    checks.push(SubCheck::new(
        "f-increasing",
        ok,
        format!("min (n+1) f' over samples {:.3e}", least.to_f64()),
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(MonotonicityCertificate {
        n,
        sigma: sigma.clone(),
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
    fn integer_sigma_passes() {
        for n in 1..=8u64 {
            let c = monotonicity_checks(n, &sig(n as f64)).unwrap();
            assert!(c.passed, "n = {n}: {:?}", c.checks);
        }
    }

    #[test]
    fn n_zero_below_golden() {
        let c = monotonicity_checks(0, &sig(0.5)).unwrap();
        assert!(c.passed, "{:?}", c.checks);
    }

    #[test]
    fn precondition_boundary() {
        let r = monotonicity_checks(2, &sig(2.0 + 0.3027756377 + 0.01));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn f_prime_matches_finite_difference() {
        let (n, s) = (2u64, 2.0f64);
        let f = |x: f64| x.powf(-1.0 - 1.0 / s) + (1.0 / x - 3.0).powf(-1.0 / s);
        let x0 = 0.31;
        let fd = (f(x0 + 1e-6) - f(x0 - 1e-6)) / 2e-6;
        let v = f_prime_scaled(&Interval::point(Float::with_val(200, x0)), n, &Interval::from_int(2, 200)).unwrap();
        assert!((v.mid().to_f64() - fd).abs() < 1e-5 * fd.abs(), "{v} vs {fd}");
    }
}
