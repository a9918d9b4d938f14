//! Closed intervals with multiprecision endpoints.
//!
//! Every operation returns an enclosure of the exact image: the lower
//! endpoint is computed with MPFR rounding toward `-∞` and the upper one
//! toward `+∞`. MPFR's elementary functions are correctly rounded in every
//! direction, so the enclosures are rigorous for `exp`, `ln` and `sqrt` too.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Round, Special};
use rug::{Assign, Float, Integer, Rational};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Down).0
}

fn up<T>(prec: u32, val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Up).0
}

/// Product with the interval convention `0 · ∞ = 0`.
fn mul_round(prec: u32, a: &Float, b: &Float, round: Round) -> Float {
    if a.is_zero() || b.is_zero() {
        return Float::new(prec);
    }
    Float::with_val_round(prec, a * b, round).0
}

fn min_of(mut vals: [Float; 4]) -> Float {
    let mut best = vals[0].clone();
    for v in vals.iter_mut().skip(1) {
        if *v < best {
            best.assign(&*v);
        }
    }
    best
}

fn max_of(mut vals: [Float; 4]) -> Float {
    let mut best = vals[0].clone();
    for v in vals.iter_mut().skip(1) {
        if *v > best {
            best.assign(&*v);
        }
    }
    best
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::Domain("interval endpoint is NaN".into()));
        }
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Float) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::point(Float::with_val(prec.max(64), v))
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        Self {
            lo: down(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        Self {
            lo: down(prec, v),
            hi: up(prec, v),
        }
    }

    /// The interval `[num/den]` enclosed at `prec` bits.
    pub fn ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_rational(&Rational::from((num, den)), prec)
    }

    /// `[0, +∞]`-style half-open bounds are written with explicit infinities.
    pub fn with_infinite_hi(lo: Float) -> Self {
        let prec = lo.prec();
        Self {
            lo,
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn into_bounds(self) -> (Float, Float) {
        (self.lo, self.hi)
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    fn prec2(&self, other: &Self) -> u32 {
        self.prec().max(other.prec())
    }

    /// Midpoint, rounded to nearest.
    pub fn mid(&self) -> Float {
        let prec = self.prec();
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return if self.lo.is_infinite() {
                self.hi.clone()
            } else {
                self.lo.clone()
            };
        }
        let mut m = Float::with_val(prec, &self.lo + &self.hi);
        m /= 2;
        m
    }

    /// Width, rounded up.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    /// `max(|lo|, |hi|)`.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains(&self, x: &Float) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        self.lo <= *x && self.hi >= *x
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo < other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi > other.hi { &self.hi } else { &other.hi };
        Self {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }

    /// Split at the midpoint.
    pub fn bisect(&self) -> (Self, Self) {
        let m = self.mid();
        (
            Self {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            Self {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec2(o);
        Self {
            lo: down(p, &self.lo + &o.lo),
            hi: up(p, &self.hi + &o.hi),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec2(o);
        Self {
            lo: down(p, &self.lo - &o.hi),
            hi: up(p, &self.hi - &o.lo),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec2(o);
        let (a, b, c, d) = (&self.lo, &self.hi, &o.lo, &o.hi);
        if *a >= 0 && *c >= 0 {
            return Self {
                lo: mul_round(p, a, c, Round::Down),
                hi: mul_round(p, b, d, Round::Up),
            };
        }
        let lo = min_of([
            mul_round(p, a, c, Round::Down),
            mul_round(p, a, d, Round::Down),
            mul_round(p, b, c, Round::Down),
            mul_round(p, b, d, Round::Down),
        ]);
        let hi = max_of([
            mul_round(p, a, c, Round::Up),
            mul_round(p, a, d, Round::Up),
            mul_round(p, b, c, Round::Up),
            mul_round(p, b, d, Round::Up),
        ]);
        Self { lo, hi }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.contains_zero() {
            return Err(Error::Domain(format!(
                "division by an interval containing zero: [{}, {}]",
                o.lo.to_f64(),
                o.hi.to_f64()
            )));
        }
        let p = self.prec2(o);
        let (a, b, c, d) = (&self.lo, &self.hi, &o.lo, &o.hi);
        let q = |x: &Float, y: &Float, r: Round| Float::with_val_round(p, x / y, r).0;
        let lo = min_of([
            q(a, c, Round::Down),
            q(a, d, Round::Down),
            q(b, c, Round::Down),
            q(b, d, Round::Down),
        ]);
        let hi = max_of([
            q(a, c, Round::Up),
            q(a, d, Round::Up),
            q(b, c, Round::Up),
            q(b, d, Round::Up),
        ]);
        Ok(Self { lo, hi })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::from_int(1, self.prec()).div(self)
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: Float::with_val(self.prec(), -&self.hi),
            hi: Float::with_val(self.prec(), -&self.lo),
        }
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            Self {
                lo: Float::new(self.prec()),
                hi: self.mag(),
            }
        }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        let p = self.prec();
        Self {
            lo: mul_round(p, &a.lo, &a.lo, Round::Down),
            hi: mul_round(p, &a.hi, &a.hi, Round::Up),
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        match n {
            0 => Self::from_int(1, self.prec()),
            1 => self.clone(),
            _ if n % 2 == 0 => self.powi(n / 2).sqr(),
            _ => self.powi(n - 1).mul(self),
        }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo < 0 {
            return Err(Error::Domain("sqrt of an interval with negative part".into()));
        }
        let p = self.prec();
        Ok(Self {
            lo: down(p, self.lo.sqrt_ref()),
            hi: up(p, self.hi.sqrt_ref()),
        })
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        Self {
            lo: down(p, self.lo.exp_ref()),
            hi: up(p, self.hi.exp_ref()),
        }
    }

    /// Natural log; `ln [0, b] = [-∞, ln b]`.
    pub fn ln(&self) -> Result<Self> {
        if self.lo < 0 {
            return Err(Error::Domain("log of an interval with negative part".into()));
        }
        let p = self.prec();
        Ok(Self {
            lo: down(p, self.lo.ln_ref()),
            hi: up(p, self.hi.ln_ref()),
        })
    }

    /// `self^e = exp(e · ln self)` for `self > 0`.
    pub fn powf(&self, e: &Self) -> Result<Self> {
        if self.lo <= 0 {
            return Err(Error::Domain("real power of a non-positive interval".into()));
        }
        Ok(e.mul(&self.ln()?).exp())
    }

    pub fn add_int(&self, v: i64) -> Self {
        self.add(&Self::from_int(v, self.prec()))
    }

    pub fn mul_int(&self, v: i64) -> Self {
        self.mul(&Self::from_int(v, self.prec()))
    }

    pub fn div_int(&self, v: i64) -> Result<Self> {
        self.div(&Self::from_int(v, self.prec()))
    }

    /// Lower endpoint as `f64`, rounded down.
    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::add(self, o)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::sub(self, o)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        Interval::mul(self, o)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(Float::with_val(128, lo), Float::with_val(128, hi)).unwrap()
    }

    #[test]
    fn third_is_enclosed() {
        let t = Interval::ratio(1, 3, 128);
        assert!(t.contains_rational(&Rational::from((1, 3))));
        assert!(t.width() > 0);
        assert!(t.width() < 1e-37);
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let a = iv(-2.0, 3.0);
        let b = iv(-5.0, 1.0);
        let c = a.mul(&b);
        assert_eq!(c.lo().to_f64(), -15.0);
        assert_eq!(c.hi().to_f64(), 10.0);
    }

    #[test]
    fn zero_times_infinity_is_zero() {
        let a = iv(0.0, 1.0);
        let b = Interval::with_infinite_hi(Float::with_val(128, 2));
        let c = a.mul(&b);
        assert_eq!(*c.lo(), 0);
        assert!(c.hi().is_infinite());
    }

    #[test]
    fn division_by_zero_interval_fails() {
        assert!(iv(1.0, 2.0).div(&iv(-1.0, 1.0)).is_err());
        assert!(iv(-1.0, 0.5).sqrt().is_err());
        assert!(iv(0.0, 1.0).powf(&iv(2.0, 2.0)).is_err());
    }

    #[test]
    fn even_power_of_straddling_interval() {
        let c = iv(-3.0, 2.0).powi(2);
        assert_eq!(*c.lo(), 0);
        assert_eq!(c.hi().to_f64(), 9.0);
    }

    #[test]
    fn exp_ln_roundtrip_encloses() {
        let x = iv(0.25, 0.5);
        let y = x.ln().unwrap().exp();
        assert!(x.subset_of(&y));
    }
}
