//! The crossing values `σ*_n`, where `B_σ(η_n) = B_σ(η_{n+1})`.
//!
//! Since `B_σ(η_m) = η_m^{-1/σ}/(1 - η_m)`, equality is linear in `1/σ`:
//!
//! ```text
//! σ*_n = log(η_n/η_{n+1}) / log((1 - η_{n+1})/(1 - η_n))
//! ```

use rug::{Float, Rational};

use crate::certified::Interval;
use crate::cf::eta_interval;
use crate::error::{Error, Result};
use crate::eval::fixed_point_enclosure;
use crate::precision::Precision;

/// `σ*_n` rounded to the requested precision.
pub fn sigma_star(n: u64, precision: Precision) -> Result<Float> {
    if n == 0 {
        return Err(Error::Domain("sigma_star needs n >= 1".into()));
    }
    let prec = precision.bits() + 32;
    let a = eta_interval(n, prec);
    let b = eta_interval(n + 1, prec);
    let one = Interval::from_int(1, prec);
    let num = a.div(&b)?.ln()?;
    let den = one.sub(&b).div(&one.sub(&a))?.ln()?;
    let v = num.div(&den)?;
    Ok(Float::with_val(precision.bits(), v.mid()))
}

/// `n - 1/2 + 5/(6n)`.
pub fn sigma_star_asymptote(n: u64) -> f64 {
    let n = n as f64;
    n - 0.5 + 5.0 / (6.0 * n)
}

/// Enclosure of `B_σ(η_m) - B_σ(η_l)`.
pub fn fixed_point_gap(m: u64, l: u64, sigma: &Rational, prec: u32) -> Result<Interval> {
    let s = Interval::from_rational(sigma, prec);
    Ok(fixed_point_enclosure(m, &s, prec)?.sub(&fixed_point_enclosure(l, &s, prec)?))
}

/// Bisection for the `σ` in `[lo, hi]` where `B_σ(η_m) - B_σ(η_l)` changes
/// sign, down to a bracket narrower than `tol`. This is an oracle for
/// [`sigma_star`] that never uses the closed formula.
pub fn crossing(
    m: u64,
    l: u64,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    precision: Precision,
) -> Result<(Rational, Rational)> {
    if lo >= hi || *lo <= 0 || *tol <= 0 {
        return Err(Error::Domain(format!("need 0 < lo < hi and tol > 0, got [{lo}, {hi}]")));
    }
    let prec = precision.bits() + 32;
    let sign = |s: &Rational| -> Result<i32> {
        let d = fixed_point_gap(m, l, s, prec)?;
        if d.is_positive() {
            Ok(1)
        } else if d.is_negative() {
            Ok(-1)
        } else {
            Ok(0)
        }
    };
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let (sa, sb) = (sign(&a)?, sign(&b)?);
    if sa == 0 || sb == 0 || sa == sb {
        return Err(Error::Inconclusive(format!(
            "no certified sign change of B(eta_{m}) - B(eta_{l}) on [{lo}, {hi}]"
        )));
    }
    while Rational::from(&b - &a) >= *tol {
        let c = Rational::from(&a + &b) / 2u32;
        match sign(&c)? {
            0 => {
                return Err(Error::Inconclusive(format!(
                    "sign undecided at sigma = {c}; raise the precision"
                )))
            }
            s if s == sa => a = c,
            _ => b = c,
        }
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let p = Precision::default();
        let s1 = sigma_star(1, p).unwrap().to_f64();
        assert!((s1 - 0.9357802329).abs() < 1e-9, "{s1}");
        let s2 = sigma_star(2, p).unwrap().to_f64();
        assert!((s2 - 1.7995181).abs() < 1e-6, "{s2}");
        assert!(sigma_star(0, p).is_err());
    }

    #[test]
    fn bisection_agrees_with_formula() {
        let p = Precision::default();
        let tol = Rational::from((1, 1u64 << 40));
        for n in [1u64, 2, 7] {
            let lo = if n == 1 { Rational::from((1, 8)) } else { Rational::from(n - 1) };
            let (a, b) = crossing(n, n + 1, &lo, &Rational::from(n), &tol, p).unwrap();
            let s = sigma_star(n, p).unwrap();
            assert!(a <= s && s <= b, "n = {n}");
        }
    }

    #[test]
    fn asymptote() {
        for n in [50u64, 100, 200] {
            let s = sigma_star(n, Precision::default()).unwrap().to_f64();
            let r = (s - sigma_star_asymptote(n)) * (n * n) as f64;
            assert!(r.abs() < 1.0, "n = {n}: {r}");
        }
    }
}
