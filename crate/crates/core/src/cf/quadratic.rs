use rug::{Float, Integer};

use crate::certified::Interval;
use crate::cf::spec::CfSpec;
use crate::error::{Error, Result};
use crate::precision::Precision;

/// A quadratic irrational in `(0, 1)`: a root of `a t² + b t + c = 0`.
///
/// The coefficients are coprime with `a > 0`. With a nonempty prefix both
/// roots can fall in `(0, 1)` (e.g. `[0; 3, (1)]` has conjugate `0.7236...`),
/// so the root is pinned by `larger`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticValue {
    a: Integer,
    b: Integer,
    c: Integer,
    larger: bool,
    approx: Float,
}

impl QuadraticValue {
    pub fn coefficients(&self) -> (&Integer, &Integer, &Integer) {
        (&self.a, &self.b, &self.c)
    }

    pub fn discriminant(&self) -> Integer {
        Integer::from(&self.b * &self.b) - Integer::from(4) * &self.a * &self.c
    }

    /// Whether the value is the larger of the two roots.
    pub fn is_larger_root(&self) -> bool {
        self.larger
    }

    /// Round-to-nearest witness at the precision it was built with.
    pub fn approx(&self) -> &Float {
        &self.approx
    }

    /// Outward-rounded enclosure of the root at `prec` bits.
    pub fn enclosure(&self, prec: u32) -> Interval {
        quadratic_root(&self.a, &self.b, &self.c, self.larger, prec)
    }

    /// How many roots lie strictly inside `(0, 1)`.
    pub fn roots_in_unit_interval(&self) -> usize {
        let prec = 64 + self.discriminant().significant_bits() * 2;
        [true, false]
            .into_iter()
            .filter(|&larger| {
                let r = quadratic_root(&self.a, &self.b, &self.c, larger, prec);
                r.is_positive() && *r.hi() < 1
            })
            .count()
    }

    /// `a t² + b t + c` at `t`.
    pub fn poly_at(&self, t: &Float) -> Float {
        let mut v = Float::with_val(t.prec(), &self.a * t);
        v += &self.b;
        v *= t;
        v += &self.c;
        v
    }
}

/// The root of `a t² + b t + c` chosen by `larger`, assuming `a > 0` and a
/// positive discriminant. Uses the cancellation-free form of each root.
pub(crate) fn quadratic_root(a: &Integer, b: &Integer, c: &Integer, larger: bool, prec: u32) -> Interval {
    let disc = Integer::from(b * b) - Integer::from(4) * a * c;
    let sq = Interval::from_integer(&disc, prec).sqrt().expect("positive discriminant");
    let bi = Interval::from_integer(b, prec);
    let two_a = Interval::from_integer(&Integer::from(a * 2), prec);
    let two_c = Interval::from_integer(&Integer::from(c * 2), prec);
    let root = if larger {
        if *b >= 0 {
            // (-b + √D)/(2a) = -2c/(b + √D)
            two_c.neg().div(&bi.add(&sq))
        } else {
            bi.neg().add(&sq).div(&two_a)
        }
    } else if *b >= 0 {
        bi.neg().sub(&sq).div(&two_a)
    } else {
        // (-b - √D)/(2a) = 2c/(√D - b)
        two_c.div(&sq.sub(&bi))
    };
    root.expect("denominator bounded away from zero")
}

/// `η_m = [0; (m)] = (√(m²+4) - m)/2`, the root of `t² + m t - 1`.
pub fn eta(m: u64, precision: Precision) -> Result<QuadraticValue> {
    if m == 0 {
        return Err(Error::Domain("eta needs m >= 1".into()));
    }
    quadratic_from_periodic(&CfSpec::fixed_point(m)?, precision)
}

/// Enclosure of `η_m` at `prec` bits.
pub fn eta_interval(m: u64, prec: u32) -> Interval {
    let m = Integer::from(m);
    quadratic_root(&Integer::from(1), &m, &Integer::from(-1), true, prec)
}

/// Convergents of `[0; word]` as `(p, q)` with `p[n + 2] = p_n` for
/// `n = -2..=word.len()`.
pub(crate) fn convergents(word: &[u64]) -> (Vec<Integer>, Vec<Integer>) {
    let mut p = vec![Integer::from(0), Integer::from(1)];
    let mut q = vec![Integer::from(1), Integer::from(0)];
    for &a in std::iter::once(&0).chain(word) {
        let k = p.len();
        let pn = Integer::from(&p[k - 1] * a) + &p[k - 2];
        let qn = Integer::from(&q[k - 1] * a) + &q[k - 2];
        p.push(pn);
        q.push(qn);
    }
    (p, q)
}

/// Enclosures of the Gauss orbit `x_0, ..., x_upto` of a periodic spec,
/// computed backwards from the quadratic tail.
pub fn orbit_enclosures(spec: &CfSpec, upto: usize, prec: u32) -> Result<Vec<Interval>> {
    let period = spec
        .period()
        .ok_or_else(|| Error::InvalidSpec("spec has no period".into()))?;
    let d = spec.prefix().len();
    let per = period.len();

    // Tail cycle y_0..y_{p-1}, y_j = A^j(y_0).
    let (pp, qq) = convergents(period);
    let a = qq[per + 1].clone();
    let b = Integer::from(&qq[per + 2] - &pp[per + 1]);
    let c = Integer::from(-&pp[per + 2]);
    let mut cycle = vec![quadratic_root(&a, &b, &c, true, prec); per];
    for j in (1..per).rev() {
        let next = if j + 1 == per { &cycle[0] } else { &cycle[j + 1] };
        cycle[j] = next.add_int(period[j] as i64).recip()?;
    }

    let mut xs = vec![cycle[0].clone(); upto.max(d) + 1];
    for (n, slot) in xs.iter_mut().enumerate().skip(d) {
        *slot = cycle[(n - d) % per].clone();
    }
    for n in (0..d).rev() {
        xs[n] = xs[n + 1].add_int(spec.prefix()[n] as i64).recip()?;
    }
    xs.truncate(upto + 1);
    Ok(xs)
}

/// The integer quadratic whose root in `(0, 1)` has the expansion `spec`.
pub fn quadratic_from_periodic(spec: &CfSpec, precision: Precision) -> Result<QuadraticValue> {
    let period = spec
        .period()
        .ok_or_else(|| Error::InvalidSpec("quadratic_from_periodic needs a period".into()))?;
    let per = period.len();
    let (pp, qq) = convergents(period);
    // y = (P_p + P_{p-1} y)/(Q_p + Q_{p-1} y)
    let a0 = qq[per + 1].clone();
    let b0 = Integer::from(&qq[per + 2] - &pp[per + 1]);
    let c0 = Integer::from(-&pp[per + 2]);

    // Substitute y = (p_d - q_d x)/(q_{d-1} x - p_{d-1}).
    let d = spec.prefix().len();
    let (p, q) = convergents(spec.prefix());
    let (pd, pd1, qd, qd1) = (&p[d + 2], &p[d + 1], &q[d + 2], &q[d + 1]);
    let mut a = Integer::from(&a0 * qd) * qd - Integer::from(&b0 * qd) * qd1 + Integer::from(&c0 * qd1) * qd1;
    let mut b = Integer::from(-2) * &a0 * pd * qd
        + (&b0 * (Integer::from(pd * qd1) + Integer::from(qd * pd1)))
        - Integer::from(2) * &c0 * pd1 * qd1;
    let mut c = Integer::from(&a0 * pd) * pd - Integer::from(&b0 * pd) * pd1 + Integer::from(&c0 * pd1) * pd1;

    let g = Integer::from(a.gcd_ref(&b)).gcd(&c);
    a /= &g;
    b /= &g;
    c /= &g;
    if a < 0 {
        a = -a;
        b = -b;
        c = -c;
    }

    let disc = Integer::from(&b * &b) - Integer::from(4) * &a * &c;
    if disc <= 0 || disc.is_perfect_square() {
        return Err(Error::InvalidSpec("periodic spec did not yield an irrational quadratic".into()));
    }

    let bits = precision.bits();
    let work = bits + 64 + 2 * disc.significant_bits();
    let target = orbit_enclosures(spec, 0, work)?.swap_remove(0);
    let larger = {
        let hi = quadratic_root(&a, &b, &c, true, work);
        let lo = quadratic_root(&a, &b, &c, false, work);
        let hit_hi = hi.hull(&target).width() <= hi.width() + target.width();
        let hit_lo = lo.hull(&target).width() <= lo.width() + target.width();
        match (hit_hi, hit_lo) {
            (true, false) => true,
            (false, true) => false,
            _ => {
                return Err(Error::InvalidSpec(
                    "could not separate the roots of the quadratic".into(),
                ))
            }
        }
    };
    let approx = Float::with_val(bits, quadratic_root(&a, &b, &c, larger, work).mid());
    Ok(QuadraticValue {
        a,
        b,
        c,
        larger,
        approx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> CfSpec {
        s.parse().unwrap()
    }

    #[test]
    fn eta_values() {
        let p = Precision::default();
        let e1 = eta(1, p).unwrap();
        assert_eq!(e1.coefficients(), (&Integer::from(1), &Integer::from(1), &Integer::from(-1)));
        let golden = (Float::with_val(200, 5).sqrt() - 1) / 2;
        assert!(Float::with_val(200, e1.approx() - &golden).abs() < 1e-49);
        let e2 = eta(2, p).unwrap();
        let silver = Float::with_val(200, 2).sqrt() - 1;
        assert!(Float::with_val(200, e2.approx() - &silver).abs() < 1e-49);
        let e3 = eta(3, p).unwrap();
        assert_eq!(e3.coefficients(), (&Integer::from(1), &Integer::from(3), &Integer::from(-1)));
        assert!((e3.approx().to_f64() - 0.3027756377).abs() < 1e-10);
    }

    #[test]
    fn prefix_composition() {
        let v = quadratic_from_periodic(&spec("[0; 2, (1)]"), Precision::default()).unwrap();
        // 1/(2 + η₁) = (3 - √5)/2, root of t² - 3t + 1.
        assert_eq!(v.coefficients(), (&Integer::from(1), &Integer::from(-3), &Integer::from(1)));
        assert!((v.approx().to_f64() - 0.381966).abs() < 1e-6);
        assert!(!v.is_larger_root());
    }

    #[test]
    fn conjugate_can_share_the_unit_interval() {
        let v = quadratic_from_periodic(&spec("[0; 3, (1)]"), Precision::default()).unwrap();
        assert_eq!(v.roots_in_unit_interval(), 2);
        let w = quadratic_from_periodic(&spec("[0; (3)]"), Precision::default()).unwrap();
        assert_eq!(w.roots_in_unit_interval(), 1);
    }

    #[test]
    fn orbit_of_mixed_spec() {
        let xs = orbit_enclosures(&spec("[0; 5, (1, 2)]"), 5, 200).unwrap();
        for w in xs.windows(2) {
            let step = w[0].recip().unwrap();
            let frac = step.sub(&Interval::from_int(step.mid().floor().to_integer().unwrap().to_i64().unwrap(), 200));
            assert!(frac.sub(&w[1]).mag() < 1e-50);
        }
    }

    #[test]
    fn rejects_seed_specs() {
        assert!(matches!(
            quadratic_from_periodic(&spec("0.3"), Precision::default()),
            Err(Error::InvalidSpec(_))
        ));
    }
}
