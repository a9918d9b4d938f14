//! The comparison functions behind `g(ξ_n) > B_n(η_{n+1})`.
//!
//! With `x = 1/n`,
//!
//! ```text
//! g(ξ_n)         = n^{1/n} γ(x),  γ(x) = (1+x²)^x + (x+x²)/(1+x²) (1+x)^x
//! B_n(η_{n+1})   = n^{1/n} β(x),  β(x) = (1+x)^x (1+r)^x x/(x - (1+x) r)
//! r(x)           = (√(1 + 4x²/(1+x)²) - 1)/2
//! ```
//!
//! and `w = γ - β ~ x³/2`. The quotient in `β` cancels badly near `0`; it is
//! evaluated through `r = 2x²/((1+x)²(s+1))`, `s = √(1 + 4x²/(1+x)²)`, so
//! that `x/(x - (1+x)r) = 1/(1 - 2x/((1+x)(s+1)))`.
//!
//! Every function is written once against [`Analytic`] and then serves
//! point intervals, interval Taylor series and exact series at the origin.

use super::interval::Interval;
use super::series::Analytic;
use crate::error::{Error, Result};

/// `base^x` as `exp(x ln base)`.
fn pow_x<T: Analytic>(base: &T, x: &T) -> Result<T> {
    x.times(&base.ln()?).exp()
}

/// `s = √(1 + 4x²/(1+x)²)`.
fn s_of<T: Analytic>(x: &T) -> Result<T> {
    let one_px = x.offset(1);
    let t = x.over(&one_px)?;
    t.times(&t).scale(4).offset(1).sqrt()
}

pub fn gamma<T: Analytic>(x: &T) -> Result<T> {
    let x2 = x.times(x);
    let one_px2 = x2.offset(1);
    let first = pow_x(&one_px2, x)?;
    let frac = x.plus(&x2).over(&one_px2)?;
    Ok(first.plus(&frac.times(&pow_x(&x.offset(1), x)?)))
}

/// `r(x)` in the cancellation-free form `2x²/((1+x)²(s+1))`.
pub fn r<T: Analytic>(x: &T) -> Result<T> {
    let one_px = x.offset(1);
    let s = s_of(x)?;
    x.times(x).scale(2).over(&one_px.times(&one_px).times(&s.offset(1)))
}

pub fn beta<T: Analytic>(x: &T) -> Result<T> {
    let one_px = x.offset(1);
    let s = s_of(x)?;
    let r = x.times(x).scale(2).over(&one_px.times(&one_px).times(&s.offset(1)))?;
    let ratio = x.constant(1).minus(&x.scale(2).over(&one_px.times(&s.offset(1)))?);
    let head = pow_x(&one_px, x)?.times(&pow_x(&r.offset(1), x)?);
    head.over(&ratio)
}

pub fn w<T: Analytic>(x: &T) -> Result<T> {
    Ok(gamma(x)?.minus(&beta(x)?))
}

/// `Ψ(x) = 1 + x + x² - (1+x)^{1+x}`.
pub fn psi<T: Analytic>(x: &T) -> Result<T> {
    let one_px = x.offset(1);
    let pw = pow_x(&one_px, &one_px)?;
    Ok(x.times(x).plus(&one_px).minus(&pw))
}

/// `F(x) = x - 2 w(x)/x²`; only meaningful away from `0`.
pub fn contraction_map<T: Analytic>(x: &T) -> Result<T> {
    let w = w(x)?;
    Ok(x.minus(&w.scale(2).over(&x.times(x))?))
}

fn check_unit(x: &Interval) -> Result<()> {
    if x.lo().is_sign_negative() && !x.lo().is_zero() || *x.hi() > 1 {
        return Err(Error::Domain(format!("argument {x} is not contained in [0, 1]")));
    }
    Ok(())
}

/// Enclosure of `γ(x)` for `x ⊆ [0, 1]`.
pub fn gamma_fn(x: &Interval) -> Result<Interval> {
    check_unit(x)?;
    gamma(x)
}

/// Enclosure of `β(x)` for `x ⊆ [0, 1]`.
pub fn beta_fn(x: &Interval) -> Result<Interval> {
    check_unit(x)?;
    beta(x)
}

/// Enclosure of `r(x)` for `x ⊆ [0, 1]`.
pub fn r_fn(x: &Interval) -> Result<Interval> {
    check_unit(x)?;
    r(x)
}

/// Enclosure of `w(x) = γ(x) - β(x)` for `x ⊆ [0, 1]`.
pub fn w_fn(x: &Interval) -> Result<Interval> {
    check_unit(x)?;
    w(x)
}

/// Enclosure of `Ψ(x)` for `x ⊆ [0, 1]`.
pub fn psi_fn(x: &Interval) -> Result<Interval> {
    check_unit(x)?;
    psi(x)
}
