//! Truncated Taylor series with generic coefficients.
//!
//! A `Series<C>` holds the Taylor coefficients `f_k = f^(k)(x0)/k!` for
//! `k = 0..=order`. Arithmetic follows the usual recurrences for products,
//! quotients, `exp`, `ln` and `sqrt`, so any formula written against
//! [`Analytic`] can be expanded automatically.
//!
//! With [`Interval`] coefficients and the independent variable seeded at an
//! interval `X`, every coefficient encloses `f^(k)(ξ)/k!` for all `ξ ∈ X`,
//! which is what the Lagrange remainder of a Taylor form needs. With exact
//! [`Rational`] coefficients at `x0 = 0` the low-order cancellation of a
//! function like `γ - β` is exact.

use rug::{Integer, Rational};

use super::interval::Interval;
use crate::error::{Error, Result};

/// Scalar-like values closed under the operations the certified formulas use.
pub trait Analytic: Clone {
    /// A constant of the same shape (precision, truncation order) as `self`.
    fn constant(&self, v: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Result<Self>;
    fn exp(&self) -> Result<Self>;
    fn ln(&self) -> Result<Self>;
    fn sqrt(&self) -> Result<Self>;

    fn scale(&self, k: i64) -> Self {
        self.times(&self.constant(k))
    }

    fn offset(&self, k: i64) -> Self {
        self.plus(&self.constant(k))
    }

    /// `self^e = exp(e · ln self)`.
    fn pow(&self, e: &Self) -> Result<Self> {
        e.times(&self.ln()?).exp()
    }
}

impl Analytic for Interval {
    fn constant(&self, v: i64) -> Self {
        Interval::from_int(v, self.prec())
    }
    fn plus(&self, o: &Self) -> Self {
        Interval::add(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        Interval::sub(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Interval::mul(self, o)
    }
    fn over(&self, o: &Self) -> Result<Self> {
        Interval::div(self, o)
    }
    fn exp(&self) -> Result<Self> {
        Ok(Interval::exp(self))
    }
    fn ln(&self) -> Result<Self> {
        Interval::ln(self)
    }
    fn sqrt(&self) -> Result<Self> {
        Interval::sqrt(self)
    }
}

/// Exact rationals support the transcendental operations only where the
/// result is again rational: `exp 0`, `ln 1` and square roots of squares.
impl Analytic for Rational {
    fn constant(&self, v: i64) -> Self {
        Rational::from(v)
    }
    fn plus(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn minus(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn times(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn over(&self, o: &Self) -> Result<Self> {
        if *o == 0 {
            return Err(Error::Domain("exact division by zero".into()));
        }
        Ok(Rational::from(self / o))
    }
    fn exp(&self) -> Result<Self> {
        if *self == 0 {
            Ok(Rational::from(1))
        } else {
            Err(Error::Domain("exp of a nonzero rational is irrational".into()))
        }
    }
    fn ln(&self) -> Result<Self> {
        if *self == 1 {
            Ok(Rational::new())
        } else {
            Err(Error::Domain("ln of a rational other than 1 is irrational".into()))
        }
    }
    fn sqrt(&self) -> Result<Self> {
        let (n, d) = (self.numer(), self.denom());
        if *n < 0 || !n.is_perfect_square() || !d.is_perfect_square() {
            return Err(Error::Domain("sqrt of a non-square rational".into()));
        }
        Ok(Rational::from((Integer::from(n.sqrt_ref()), Integer::from(d.sqrt_ref()))))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Analytic> Series<C> {
    /// The identity function expanded at `at`: `at + 1·h`.
    pub fn variable(at: C, order: usize) -> Self {
        let mut coeffs = vec![at.constant(0); order + 1];
        if order >= 1 {
            coeffs[1] = at.constant(1);
        }
        coeffs[0] = at;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn zero(&self) -> C {
        self.coeffs[0].constant(0)
    }

    fn div_usize(c: &C, k: usize) -> Result<C> {
        c.over(&c.constant(k as i64))
    }
}

impl<C: Analytic> Analytic for Series<C> {
    fn constant(&self, v: i64) -> Self {
        let mut coeffs = vec![self.zero(); self.coeffs.len()];
        coeffs[0] = self.coeffs[0].constant(v);
        Self { coeffs }
    }

    fn plus(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.plus(b)).collect();
        Self { coeffs }
    }

    fn minus(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.minus(b)).collect();
        Self { coeffs }
    }

    fn times(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                (1..=k).fold(self.coeffs[0].times(&o.coeffs[k]), |acc, j| {
                    acc.plus(&self.coeffs[j].times(&o.coeffs[k - j]))
                })
            })
            .collect();
        Self { coeffs }
    }

    fn over(&self, o: &Self) -> Result<Self> {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut q: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = acc.minus(&o.coeffs[j].times(&q[k - j]));
            }
            q.push(acc.over(&o.coeffs[0])?);
        }
        Ok(Self { coeffs: q })
    }

    fn exp(&self) -> Result<Self> {
        let n = self.coeffs.len();
        let mut e: Vec<C> = Vec::with_capacity(n);
        e.push(self.coeffs[0].exp()?);
        for k in 1..n {
            let mut acc = self.zero();
            for j in 1..=k {
                acc = acc.plus(&self.coeffs[j].scale(j as i64).times(&e[k - j]));
            }
            e.push(Self::div_usize(&acc, k)?);
        }
        Ok(Self { coeffs: e })
    }

    fn ln(&self) -> Result<Self> {
        let n = self.coeffs.len();
        let f0 = &self.coeffs[0];
        let mut l: Vec<C> = Vec::with_capacity(n);
        l.push(f0.ln()?);
        for k in 1..n {
            let mut acc = self.zero();
            #[allow(clippy::needless_range_loop)]
            for j in 1..k {
                acc = acc.plus(&l[j].scale(j as i64).times(&self.coeffs[k - j]));
            }
            let num = self.coeffs[k].minus(&Self::div_usize(&acc, k)?);
            l.push(num.over(f0)?);
        }
        Ok(Self { coeffs: l })
    }

    fn sqrt(&self) -> Result<Self> {
        let n = self.coeffs.len();
        let mut s: Vec<C> = Vec::with_capacity(n);
        s.push(self.coeffs[0].sqrt()?);
        let two_s0 = s[0].scale(2);
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.minus(&s[j].times(&s[k - j]));
            }
            s.push(acc.over(&two_s0)?);
        }
        Ok(Self { coeffs: s })
    }
}

/// Enclosures of `f(X)` and `f'(X)` from a Taylor form centred at `c`.
///
/// `point` holds `f_k(c)` for `k < N` and `remainder` encloses
/// `f^(N)(ξ)/N!` over `ξ ∈ X`; `h = X - c`.
pub fn taylor_form(point: &[Interval], remainder: &Interval, h: &Interval) -> (Interval, Interval) {
    let n = point.len();
    // Horner for Σ a_k h^k + R h^N
    let mut value = remainder.clone();
    for a in point.iter().rev() {
        value = a.add(&value.mul(h));
    }
    // Σ k a_k h^{k-1} + N R h^{N-1}
    let mut deriv = remainder.mul_int(n as i64);
    for k in (1..n).rev() {
        deriv = point[k].mul_int(k as i64).add(&deriv.mul(h));
    }
    (value, deriv)
}

/// Evaluates `Σ_{k<N} c_k x^k + R x^N` on `x ⊆ [0, ∞)` after factoring out
/// the exactly-vanishing leading coefficients: returns `(s, q)` with
/// `f(x) ∈ x^s · q` for every `x` in the interval.
pub fn factored_at_origin(
    head: &[Rational],
    remainder: &Interval,
    x: &Interval,
) -> (usize, Interval) {
    let prec = x.prec();
    let s = head.iter().take_while(|c| **c == 0).count();
    let mut q = remainder.clone();
    for c in head[s..].iter().rev() {
        q = Interval::from_rational(c, prec).add(&q.mul(x));
    }
    (s, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn exp_of_variable_at_zero_is_factorial_series() {
        let x = Series::variable(Rational::new(), 6);
        let e = x.exp().unwrap();
        let fact = [1, 1, 2, 6, 24, 120, 720];
        for (k, f) in fact.iter().enumerate() {
            assert_eq!(*e.coeff(k), Rational::from((1, *f)));
        }
    }

    #[test]
    fn ln_of_one_plus_x() {
        let x = Series::variable(Rational::new(), 5);
        let l = x.offset(1).ln().unwrap();
        let expect = [(0, 1), (1, 1), (-1, 2), (1, 3), (-1, 4), (1, 5)];
        for (k, (n, d)) in expect.iter().enumerate() {
            assert_eq!(*l.coeff(k), Rational::from((*n, *d)));
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let x = Series::variable(Rational::new(), 7);
        let f = x.times(&x).scale(4).offset(1);
        let s = f.sqrt().unwrap();
        assert_eq!(s.times(&s), f);
    }

    #[test]
    fn quotient_inverts_product() {
        let x = Series::variable(Rational::from(2), 5);
        let f = x.times(&x).offset(3);
        let g = x.offset(1);
        let q = f.over(&g).unwrap();
        assert_eq!(q.times(&g), f);
    }

    #[test]
    fn rational_transcendentals_refuse_irrational_results() {
        assert!(Rational::from(2).exp().is_err());
        assert!(Rational::from(2).ln().is_err());
        assert!(Rational::from(2).sqrt().is_err());
        assert_eq!(Rational::from((9, 4)).sqrt().unwrap(), Rational::from((3, 2)));
    }

    #[test]
    fn interval_series_encloses_point_series() {
        // exp(x) at x in [0.1, 0.2]: coefficient k encloses exp(ξ)/k!
        let x = Interval::new(Float::with_val(128, 0.1), Float::with_val(128, 0.2)).unwrap();
        let e = Series::variable(x, 4).exp().unwrap();
        let c3 = e.coeff(3);
        let at = Float::with_val(128, 0.15).exp() / 6u32;
        assert!(c3.contains(&Float::with_val(128, at)));
    }

    #[test]
    fn taylor_form_of_cubic_is_exact_enough() {
        // f(x) = x^3 around c = 1 on X = [0.9, 1.1]
        let prec = 128;
        let c = Interval::from_int(1, prec);
        let xs = Series::variable(c, 3);
        let f = xs.times(&xs).times(&xs);
        let point: Vec<Interval> = f.coeffs()[..3].to_vec();
        let rem = f.coeff(3).clone();
        let h = Interval::new(Float::with_val(prec, -0.1), Float::with_val(prec, 0.1)).unwrap();
        let (v, d) = taylor_form(&point, &rem, &h);
        assert!(v.contains(&Float::with_val(prec, 0.729)));
        assert!(v.contains(&Float::with_val(prec, 1.331)));
        assert!(d.contains(&Float::with_val(prec, 3.0)));
    }
}
