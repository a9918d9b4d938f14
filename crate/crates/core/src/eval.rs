//! Evaluation of `B_σ(x) = Σ_{j>=0} β_{j-1}(x) x_j^{-1/σ}`.
//!
//! Exact closed forms are available on eventually periodic points: if
//! `A^p(y) = y` then `B_σ(y) = B_σ^{(p-1)}(y) / (1 - β_{p-1}(y))`, and a
//! prefix of length `d` is peeled off with
//! `B_σ(x) = B_σ^{(d-1)}(x) + β_{d-1}(x) B_σ(A^d x)`.
//!
//! Everywhere else the value is enclosed between
//! `B_σ^{(K)} + β_K b*` and `B_σ^{(K)} + β_K T(M, σ)`, where `T` bounds
//! `B_σ` on points whose quotients are all at most `M`.

use std::fmt;

use rug::float::Special;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bounds;
use crate::certified::Interval;
use crate::cf::{self, CfSpec, ConvergentTable};
use crate::error::{Error, Result};
use crate::precision::Precision;

/// Extra bits carried through interval evaluations.
const GUARD: u32 = 64;

/// The exponent parameter `σ > 0` together with the working precision.
///
/// `σ` is kept as an exact rational so that intervals around it are tight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaParam {
    sigma: Rational,
    precision: Precision,
}

impl SigmaParam {
    pub fn from_rational(sigma: Rational, precision: Precision) -> Result<Self> {
        if sigma <= 0 {
            return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
        }
        Ok(Self { sigma, precision })
    }

    /// `σ` from a binary float; the conversion is exact.
    pub fn new(sigma: f64, precision: Precision) -> Result<Self> {
        let r = Rational::from_f64(sigma)
            .ok_or_else(|| Error::Domain(format!("sigma must be finite, got {sigma}")))?;
        Self::from_rational(r, precision)
    }

    /// Parses `2`, `1.5`, `0.935e1` or `7/4` exactly.
    pub fn parse(text: &str, precision: Precision) -> Result<Self> {
        Self::from_rational(parse_decimal(text)?, precision)
    }

    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }

    pub fn to_f64(&self) -> f64 {
        self.sigma.to_f64()
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn with_precision(&self, precision: Precision) -> Self {
        Self {
            sigma: self.sigma.clone(),
            precision,
        }
    }

    /// Bits used by interval evaluations.
    pub fn work_bits(&self) -> u32 {
        self.precision.bits() + GUARD
    }

    pub fn interval(&self, prec: u32) -> Interval {
        Interval::from_rational(&self.sigma, prec)
    }
}

impl fmt::Display for SigmaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma.denom() == &1 {
            write!(f, "{}", self.sigma.numer())
        } else {
            write!(f, "{}", self.sigma.to_f64())
        }
    }
}

/// Exact value of a decimal literal such as `-1.25e-3` or a fraction `7/4`.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a number: `{text}`"),
    };
    if let Some((n, d)) = s.split_once('/') {
        let n: Integer = n.trim().parse().map_err(|_| bad())?;
        let d: Integer = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((n, d)));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty()
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: Integer = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32 - 1;
    let ten = Integer::from(10);
    let mut value = Rational::from(digits);
    if scale >= 0 {
        value *= ten.pow(scale as u32);
    } else {
        value /= ten.pow((-scale) as u32);
    }
    Ok(if neg { -value } else { value })
}

/// A closed interval `[lo, hi]` of extended reals certified to contain a
/// value; `hi = +∞` means no upper bound is known.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

impl Enclosure {
    pub fn new(lo: Float, hi: Float) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::Domain(format!("invalid enclosure [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn from_interval(iv: Interval) -> Self {
        let (lo, hi) = iv.into_bounds();
        Self { lo, hi }
    }

    /// `[+∞, +∞]`, the value of `B_σ` at a rational point.
    pub fn infinite(prec: u32) -> Self {
        let inf = Float::with_val(prec, Special::Infinity);
        Self { lo: inf.clone(), hi: inf }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn width(&self) -> Float {
        Float::with_val(self.hi.prec(), &self.hi - &self.lo)
    }

    pub fn mid(&self) -> Float {
        if self.is_bounded() {
            Float::with_val(self.hi.prec(), &self.hi + &self.lo) / 2
        } else {
            self.hi.clone()
        }
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn to_interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone()).expect("ordered")
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// How an [`EvalReport`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Enclosure,
    LowerOnly,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Enclosure => "enclosure",
            Method::LowerOnly => "lower-only",
        })
    }
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub value: Enclosure,
    /// The truncation depth `K` of `partial_sum` and `beta_k`.
    pub depth_used: usize,
    /// `B_σ^{(K)}`, rounded to nearest.
    pub partial_sum: Float,
    /// `β_K`, rounded to nearest.
    pub beta_k: Float,
    pub method: Method,
}

/// Enclosure of `x^{-1/σ} = exp(-ln(x)/σ)`.
pub(crate) fn neg_power(x: &Interval, sigma: &Interval) -> Result<Interval> {
    Ok(x.ln()?.div(sigma)?.neg().exp())
}

/// `B_σ(η_m) = η_m^{-1/σ} / (1 - η_m)`.
pub fn fixed_point_enclosure(m: u64, sigma: &Interval, prec: u32) -> Result<Interval> {
    let eta = cf::eta_interval(m, prec);
    neg_power(&eta, sigma)?.div(&Interval::from_int(1, prec).sub(&eta))
}

/// Closed-form value of `B_σ` at the fixed point `η_m = [0; (m)]`.
pub fn fixed_point_value(m: u64, sigma: &SigmaParam) -> Result<Enclosure> {
    let prec = sigma.work_bits();
    Ok(Enclosure::from_interval(fixed_point_enclosure(m, &sigma.interval(prec), prec)?))
}

/// `(B_σ^{(K)}(x), β_K(x))` rounded to nearest at the working precision.
///
/// Float seeds that cannot be expanded to depth `K` give
/// [`Error::PrecisionExhausted`].
pub fn partial_sum(spec: &CfSpec, sigma: &SigmaParam, k: usize) -> Result<(Float, Float)> {
    let table = cf::expand(spec, k, sigma.precision())?;
    if table.is_truncated() {
        return Err(Error::PrecisionExhausted {
            depth: table.depth(),
            requested: k,
        });
    }
    let prec = sigma.precision().bits();
    let s = Float::with_val(prec, sigma.sigma());
    let mut sum = Float::new(prec);
    for j in 0..=k {
        let x = table.x(j);
        let pw = (-(Float::with_val(prec, x.ln_ref()) / &s)).exp();
        sum += Float::with_val(prec, table.beta(j as i64 - 1) * pw);
    }
    Ok((sum, table.beta(k as i64).clone()))
}

/// Enclosures of `B_σ^{(k)}` and `β_k` for `k = 0..=K` from the stored
/// iterates and their error bounds.
pub fn partial_sum_enclosures(table: &ConvergentTable, sigma: &Interval) -> Result<Vec<(Interval, Interval)>> {
    let prec = sigma.prec();
    let mut out = Vec::with_capacity(table.depth() + 1);
    let mut sum = Interval::from_int(0, prec);
    let mut beta = Interval::from_int(1, prec);
    for j in 0..=table.depth() {
        let xv = Float::with_val(prec, table.x(j));
        let e = Interval::point(Float::with_val(prec, table.x_rel_err(j)));
        let radius = Interval::point(xv.clone()).mul(&e);
        let x = Interval::point(xv).add(&Interval::new(-radius.hi().clone(), radius.hi().clone())?);
        sum = sum.add(&beta.mul(&neg_power(&x, sigma)?));
        beta = beta.mul(&x);
        out.push((sum.clone(), beta.clone()));
    }
    Ok(out)
}

/// `1/F_1 + 1/F_2 + ...` bounded above: the first `J` terms plus `3/F_{J+1}`.
fn reciprocal_fibonacci_upper(prec: u32) -> Interval {
    const J: usize = 90;
    let mut sum = Interval::from_int(0, prec);
    let (mut a, mut b) = (Integer::from(1), Integer::from(1));
    for _ in 0..J {
        sum = sum.add(&Interval::from_int(1, prec).div(&Interval::from_integer(&a, prec)).expect("nonzero"));
        let c = Integer::from(&a + &b);
        a = std::mem::replace(&mut b, c);
    }
    let tail = Interval::from_int(3, prec).div(&Interval::from_integer(&a, prec)).expect("nonzero");
    let s = sum.add(&tail);
    Interval::new(sum.lo().clone(), s.hi().clone()).expect("ordered")
}

/// `T(M, σ) = (M+1)^{1/σ} Σ_{m>=1} 1/F_m`, an upper bound for `B_σ` at any
/// point whose partial quotients are all at most `M`.
pub fn tail_bound(m: u64, sigma: &Interval) -> Result<Interval> {
    let prec = sigma.prec();
    let base = Interval::from_integer(&Integer::from(m + 1), prec);
    Ok(base.ln()?.div(sigma)?.exp().mul(&reciprocal_fibonacci_upper(prec)))
}

/// Depth at which `β_K T(M, σ) < 10^-12` is guaranteed by `β_K < 1/F_{K+2}`;
/// `60` when no quotient bound is known.
pub fn default_depth(sigma: &SigmaParam, m: Option<u64>) -> usize {
    let Some(m) = m else { return 60 };
    let t = ((m + 1) as f64).powf(1.0 / sigma.to_f64()) * 3.36;
    let (mut a, mut b) = (1f64, 1f64);
    for k in 0..2000 {
        // b = F_{k+2}
        if t / b < 1e-12 {
            return k.max(1);
        }
        let c = a + b;
        a = b;
        b = c;
    }
    2000
}

fn report_from_table(table: &ConvergentTable, sigma: &SigmaParam, m: Option<u64>) -> Result<EvalReport> {
    let prec = sigma.work_bits();
    let s = sigma.interval(prec);
    let b_star = bounds::b_star_enclosure(&s)?;
    let tail = m.map(|m| tail_bound(m, &s)).transpose()?;
    let sums = partial_sum_enclosures(table, &s)?;
    // Every truncation level gives valid bounds; keep the best, which also
    // makes deeper enclosures nested in shallower ones.
    let mut lo = Float::with_val(prec, Special::NegInfinity);
    let mut hi = Float::with_val(prec, Special::Infinity);
    for (sum, beta) in &sums {
        let l = sum.add(&beta.mul(&b_star));
        if *l.lo() > lo {
            lo = l.lo().clone();
        }
        if let Some(t) = &tail {
            let h = sum.add(&beta.mul(t));
            if *h.hi() < hi {
                hi = h.hi().clone();
            }
        }
    }
    let (sum, beta) = sums.last().expect("depth >= 0");
    let out = sigma.precision().bits();
    Ok(EvalReport {
        value: Enclosure::new(lo, hi)?,
        depth_used: table.depth(),
        partial_sum: Float::with_val(out, sum.mid()),
        beta_k: Float::with_val(out, beta.mid()),
        method: if m.is_some() {
            Method::Enclosure
        } else {
            Method::LowerOnly
        },
    })
}

/// Enclosure of `B_σ` from the partial sum of depth `K`.
///
/// With `m = Some(M)` the caller asserts that every partial quotient after
/// `a_{K+1}` is at most `M`, which gives a finite upper bound. Float seeds
/// that lose accuracy before depth `K` are evaluated at the depth they reach.
pub fn eval_enclosure(spec: &CfSpec, sigma: &SigmaParam, k: usize, m: Option<u64>) -> Result<EvalReport> {
    if k == 0 {
        return Err(Error::Domain("eval_enclosure needs K >= 1".into()));
    }
    let table = cf::expand(spec, k, sigma.precision())?;
    report_from_table(&table, sigma, m)
}

/// [`eval_enclosure`] on an already expanded table.
pub fn eval_table(table: &ConvergentTable, sigma: &SigmaParam, m: Option<u64>) -> Result<EvalReport> {
    report_from_table(table, sigma, m)
}

/// Exact closed-form value of `B_σ` at an eventually periodic point.
pub fn eval_periodic_exact(spec: &CfSpec, sigma: &SigmaParam) -> Result<EvalReport> {
    let period = spec
        .period()
        .ok_or_else(|| Error::InvalidSpec("closed form needs a periodic spec".into()))?;
    let prec = sigma.work_bits();
    let s = sigma.interval(prec);
    let d = spec.prefix().len();
    let p = period.len();
    let xs = cf::orbit_enclosures(spec, d + p - 1, prec)?;

    let mut sum = Interval::from_int(0, prec);
    let mut beta = Interval::from_int(1, prec);
    let mut prefix_sum = sum.clone();
    let mut prefix_beta = beta.clone();
    for (j, x) in xs.iter().enumerate() {
        if j == d {
            prefix_sum = sum.clone();
            prefix_beta = beta.clone();
        }
        sum = sum.add(&beta.mul(&neg_power(x, &s)?));
        beta = beta.mul(x);
    }
    // Cycle part: Σ_{j<p} β^y_{j-1} y_j^{-1/σ} / (1 - β^y_{p-1}).
    let mut cyc_sum = Interval::from_int(0, prec);
    let mut cyc_beta = Interval::from_int(1, prec);
    for y in &xs[d..] {
        cyc_sum = cyc_sum.add(&cyc_beta.mul(&neg_power(y, &s)?));
        cyc_beta = cyc_beta.mul(y);
    }
    let b_tail = cyc_sum.div(&Interval::from_int(1, prec).sub(&cyc_beta))?;
    let value = prefix_sum.add(&prefix_beta.mul(&b_tail));

    let out = sigma.precision().bits();
    Ok(EvalReport {
        value: Enclosure::from_interval(value),
        depth_used: d + p - 1,
        partial_sum: Float::with_val(out, sum.mid()),
        beta_k: Float::with_val(out, beta.mid()),
        method: Method::ClosedForm,
    })
}

/// `(Σ_j β_{j-1} x_j^{-1/σ}, β_d, d)` over the whole terminating expansion
/// of a rational `r ∈ (0, 1)`, `d` being the index of the last nonzero iterate.
pub(crate) fn finite_sum(r: &Rational, sigma: &Interval, prec: u32) -> Result<(Interval, Interval, usize)> {
    let mut x = r.clone();
    let mut sum = Interval::from_int(0, prec);
    let mut beta = Interval::from_int(1, prec);
    let mut terms = 0;
    while x != 0 {
        let xi = Interval::from_rational(&x, prec);
        sum = sum.add(&beta.mul(&neg_power(&xi, sigma)?));
        beta = beta.mul(&xi);
        terms += 1;
        let inv = Rational::from(x.recip_ref());
        let fl = Rational::from(inv.floor_ref());
        x = inv - fl;
    }
    Ok((sum, beta, terms.max(1) - 1))
}

/// `B_σ` at a rational point is `+∞`; the lower end is the full finite sum
/// plus `β_d b*`, as for any truncation.
pub fn eval_rational(r: &Rational, sigma: &SigmaParam) -> Result<EvalReport> {
    if !(*r > 0 && *r < 1) {
        return Err(Error::Domain(format!("rational point {r} must lie in (0, 1)")));
    }
    let prec = sigma.work_bits();
    let s = sigma.interval(prec);
    let (sum, beta, d) = finite_sum(r, &s, prec)?;
    let lo = sum.add(&beta.mul(&bounds::b_star_enclosure(&s)?)).lo().clone();
    let out = sigma.precision().bits();
    Ok(EvalReport {
        value: Enclosure::new(lo, Float::with_val(prec, Special::Infinity))?,
        depth_used: d,
        partial_sum: Float::with_val(out, sum.mid()),
        beta_k: Float::with_val(out, beta.mid()),
        method: Method::LowerOnly,
    })
}

/// Upper bound on `|B_σ(x) - x^{-1/σ} - x B_σ(A(x))|` from the closed forms.
pub fn functional_equation_residual(spec: &CfSpec, sigma: &SigmaParam) -> Result<Float> {
    let prec = sigma.work_bits();
    let s = sigma.interval(prec);
    let bx = eval_periodic_exact(spec, sigma)?.value.to_interval();
    let bax = eval_periodic_exact(&spec.shift()?, sigma)?.value.to_interval();
    let x = cf::orbit_enclosures(spec, 0, prec)?.swap_remove(0);
    let r = bx.sub(&neg_power(&x, &s)?).sub(&x.mul(&bax));
    Ok(Float::with_val(sigma.precision().bits(), r.mag()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> CfSpec {
        s.parse().unwrap()
    }

    fn sig(v: f64) -> SigmaParam {
        SigmaParam::new(v, Precision::default()).unwrap()
    }

    #[test]
    fn rational_lower_end_is_g_at_last_iterate() {
        // 1/2 = [0; 2]: lo = 2 + b*(1)/2 = g(1/2) = 4
        let r = eval_rational(&Rational::from((1, 2)), &sig(1.0)).unwrap();
        assert!((r.value.lo().to_f64() - 4.0).abs() < 1e-40);
        assert!(!r.value.is_bounded());
        assert_eq!(r.method, Method::LowerOnly);
        assert!(eval_rational(&Rational::from(1), &sig(1.0)).is_err());
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("1.5").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_decimal("2").unwrap(), Rational::from(2));
        assert_eq!(parse_decimal("7/4").unwrap(), Rational::from((7, 4)));
        assert_eq!(parse_decimal("-1.25e-1").unwrap(), Rational::from((-1, 8)));
        assert_eq!(parse_decimal(".5").unwrap(), Rational::from((1, 2)));
        for bad in ["", ".", "1..2", "abc", "1/0", "1e"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
        assert!(SigmaParam::parse("0", Precision::default()).is_err());
    }

    #[test]
    fn first_term_at_fixed_point() {
        let (b0, beta0) = partial_sum(&sp("[0; (3)]"), &sig(2.0), 0).unwrap();
        assert!((b0.to_f64() - 1.8173541).abs() < 1e-7);
        assert!((beta0.to_f64() - 0.3027756377).abs() < 1e-10);
        let (b0, _) = partial_sum(&sp("[0; 2, (1)]"), &sig(1.0), 0).unwrap();
        assert!((b0.to_f64() - 1.0 / 0.381966011250105).abs() < 1e-9);
    }

    #[test]
    fn closed_forms() {
        let v = eval_periodic_exact(&sp("[0; (3)]"), &sig(2.0)).unwrap();
        assert!((v.value.mid().to_f64() - 2.6065555356).abs() < 1e-9);
        assert_eq!(v.method, Method::ClosedForm);
        let v = eval_periodic_exact(&sp("[0; (2)]"), &sig(1.0)).unwrap();
        assert!((v.value.mid().to_f64() - 4.1213203).abs() < 1e-7);
        let v = eval_periodic_exact(&sp("[0; (1)]"), &sig(1.0)).unwrap();
        assert!((v.value.mid().to_f64() - 4.2360680).abs() < 1e-7);
    }

    #[test]
    fn lower_only_contract() {
        let s = sig(2.0);
        let r = eval_enclosure(&sp("[0; (1)]"), &s, 1, None).unwrap();
        assert_eq!(r.method, Method::LowerOnly);
        assert!(r.value.hi().is_infinite());
        let bstar = Float::with_val(200, 3).pow(1.5) / 2;
        let expect = Float::with_val(200, &r.partial_sum + &r.beta_k * bstar);
        assert!(Float::with_val(200, r.value.lo() - &expect).abs() < 1e-45);
        assert!(eval_enclosure(&sp("[0; (1)]"), &s, 0, None).is_err());
    }

    #[test]
    fn residual_is_tiny() {
        for (spec, s) in [("[0; (3)]", 2.0), ("[0; 2, (1)]", 1.0), ("[0; (1)]", 0.5)] {
            let r = functional_equation_residual(&sp(spec), &sig(s)).unwrap();
            assert!(r < 1e-45, "{spec}: {r}");
        }
    }

    #[test]
    fn default_depth_meets_target() {
        let s = sig(2.0);
        assert_eq!(default_depth(&s, None), 60);
        let k = default_depth(&s, Some(3));
        assert!(k > 40 && k < 80, "{k}");
    }
}
