use rug::{Float, Integer, Rational};

use crate::cf::gauss::gauss_step;
use crate::cf::quadratic::orbit_enclosures;
use crate::cf::spec::{CfSpec, Tail, QUOTIENT_CAP};
use crate::error::{Error, Result};
use crate::precision::Precision;

/// Relative uncertainty of a float-seeded iterate beyond which expansion stops.
const SEED_BUDGET_LOG2: i32 = -20;

/// Convergents and Gauss iterates of a point up to some depth `K`.
///
/// Stores `a_1..a_{K+1}`, `p_n, q_n` for `n = -2..=K+1`, `x_0..x_K` and
/// `β_{-1}..β_K`. One quotient beyond `K` is kept so that the estimate
/// `1/2 < β_K q_{K+1} < 1` can be checked at the last index.
#[derive(Debug, Clone)]
pub struct ConvergentTable {
    quotients: Vec<u64>,
    p: Vec<Integer>,
    q: Vec<Integer>,
    x: Vec<Float>,
    beta: Vec<Float>,
    /// Bound on the relative error of each stored `x_n`.
    rel_err: Vec<f64>,
    exact: bool,
    requested: usize,
}

impl ConvergentTable {
    fn build(quotients: Vec<u64>, x: Vec<Float>, rel_err: Vec<f64>, exact: bool, requested: usize, prec: u32) -> Self {
        debug_assert_eq!(quotients.len(), x.len());
        let mut p = vec![Integer::from(0), Integer::from(1), Integer::from(0)];
        let mut q = vec![Integer::from(1), Integer::from(0), Integer::from(1)];
        for &a in &quotients {
            let k = p.len();
            let pn = Integer::from(&p[k - 1] * a) + &p[k - 2];
            let qn = Integer::from(&q[k - 1] * a) + &q[k - 2];
            p.push(pn);
            q.push(qn);
        }
        let mut beta = Vec::with_capacity(x.len() + 1);
        beta.push(Float::with_val(prec, 1));
        for xn in &x {
            let next = Float::with_val(prec, beta.last().unwrap() * xn);
            beta.push(next);
        }
        Self {
            quotients,
            p,
            q,
            x,
            beta,
            rel_err,
            exact,
            requested,
        }
    }

    /// Depth `K` actually available. Smaller than requested when a float
    /// seed ran out of accuracy.
    pub fn depth(&self) -> usize {
        self.x.len() - 1
    }

    pub fn requested_depth(&self) -> usize {
        self.requested
    }

    pub fn is_truncated(&self) -> bool {
        self.depth() < self.requested
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn prec(&self) -> u32 {
        self.x[0].prec()
    }

    /// `a_n` for `1 <= n <= K + 1`.
    pub fn quotient(&self, n: usize) -> u64 {
        self.quotients[n - 1]
    }

    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    /// `p_n` for `-2 <= n <= K + 1`.
    pub fn p(&self, n: i64) -> &Integer {
        &self.p[(n + 2) as usize]
    }

    /// `q_n` for `-2 <= n <= K + 1`.
    pub fn q(&self, n: i64) -> &Integer {
        &self.q[(n + 2) as usize]
    }

    /// `x_n = A^n(x)` for `0 <= n <= K`.
    pub fn x(&self, n: usize) -> &Float {
        &self.x[n]
    }

    pub fn xs(&self) -> &[Float] {
        &self.x
    }

    /// Bound on `|x̃_n - x_n| / x_n` for the stored iterate `x̃_n`.
    pub fn x_rel_err(&self, n: usize) -> f64 {
        self.rel_err[n]
    }

    /// `β_n = x_0 x_1 ... x_n` for `-1 <= n <= K`.
    pub fn beta(&self, n: i64) -> &Float {
        &self.beta[(n + 1) as usize]
    }

    /// The convergent `p_n / q_n`, `0 <= n <= K + 1`.
    pub fn convergent(&self, n: usize) -> Rational {
        Rational::from((self.p(n as i64).clone(), self.q(n as i64).clone()))
    }
}

/// Convergents and iterates of `spec` to depth `K`.
///
/// Periodic specs take their iterates from the exact quadratic tail. Float
/// seeds are iterated with a propagated error bound and the table is cut
/// short (see [`ConvergentTable::is_truncated`]) once an iterate is no
/// longer known to relative accuracy `2^-20`.
pub fn expand(spec: &CfSpec, depth: usize, precision: Precision) -> Result<ConvergentTable> {
    match spec.tail() {
        Tail::Periodic(_) => {
            let prec = precision.bits();
            let x = orbit_enclosures(spec, depth, prec + 32)?
                .into_iter()
                .map(|iv| Float::with_val(prec, iv.mid()))
                .collect();
            let quotients = (1..=depth + 1).map(|n| spec.quotient(n).unwrap()).collect();
            let rel_err = vec![unit_roundoff(prec); depth + 1];
            Ok(ConvergentTable::build(quotients, x, rel_err, true, depth, prec))
        }
        Tail::Seed(seed) => {
            let t = seed.to_float(precision.bits());
            expand_float(spec.prefix(), &t, depth, precision)
        }
    }
}

/// Expansion of `[0; prefix, t]` where the tail `t ∈ (0, 1)` is a float.
///
/// `t` is taken as exact to within half an ulp.
pub fn expand_float(prefix: &[u64], t: &Float, depth: usize, precision: Precision) -> Result<ConvergentTable> {
    let prec = precision.bits();
    if !(t.is_finite() && *t > 0 && *t < 1) {
        return Err(Error::Domain(format!("float tail must lie in (0, 1), got {t}")));
    }
    for &a in prefix {
        if a == 0 || a > QUOTIENT_CAP {
            return Err(Error::InvalidSpec(format!("bad partial quotient {a}")));
        }
    }
    let d = prefix.len();
    let mut quotients: Vec<u64> = prefix.iter().copied().take(depth + 1).collect();
    // tail holds x_d, ..., x_n and quotients holds a_1, ..., a_n.
    let mut tail = vec![Float::with_val(prec, t)];
    let mut tail_err = vec![unit_roundoff(prec)];
    let ulp = Float::with_val(53, -(prec as i32 - 1)).exp2();
    // Absolute error bound of the last iterate, kept in 53 bits and inflated
    // by 1% per step to absorb its own rounding.
    let mut err = Float::with_val(53, &ulp * t);

    while quotients.len() < depth + 1 {
        let n = d + tail.len() - 1;
        let cur = tail.last().unwrap();
        let (a, next) = gauss_step(cur)?;
        if next.is_zero() {
            return Err(Error::RationalInput { depth: n + 1 });
        }
        let xf = Float::with_val(53, cur);
        let rel = Float::with_val(53, &err / &xf);
        // |Δ(1/x)| <= (e/x²)/(1 - e/x), plus one rounding of 1/x.
        let mut next_err = Float::with_val(53, &rel / &xf) * (1.0 + 2.0 * rel.to_f64());
        next_err += Float::with_val(53, &ulp / &xf) * 2;
        next_err *= 1.01;

        // a_{n+1} = floor(1/x_n) is decided only if 1/x_n is not within the
        // error of an integer.
        let nf = Float::with_val(53, &next);
        let gap = Float::with_val(53, 1 - &nf).min(&nf);
        if next_err >= gap {
            quotients.truncate(n);
            break;
        }
        if a > QUOTIENT_CAP {
            return Err(Error::QuotientCap { quotient: a.to_string() });
        }
        quotients.push(a);
        if quotients.len() == depth + 1 {
            break;
        }
        let budget = Float::with_val(53, SEED_BUDGET_LOG2).exp2() * &nf;
        if next_err > budget {
            break;
        }
        tail_err.push(Float::with_val(53, &next_err / &nf).to_f64() * 1.01);
        tail.push(next);
        err = next_err;
    }

    if quotients.is_empty() {
        return Err(Error::PrecisionExhausted { depth: 0, requested: depth });
    }
    let k = quotients.len() - 1;
    let mut x = vec![Float::new(prec); d];
    x.extend(tail);
    let mut rel_err = vec![0.0; d];
    rel_err.extend(tail_err);
    for j in (0..d).rev() {
        let v = Float::with_val(prec, &x[j + 1] + prefix[j]);
        x[j] = v.recip();
        // 1/(a + y) contracts relative errors by y/(a + y) < 1.
        rel_err[j] = rel_err[j + 1] + 2.0 * unit_roundoff(prec);
    }
    x.truncate(k + 1);
    rel_err.truncate(k + 1);
    Ok(ConvergentTable::build(quotients, x, rel_err, false, depth, prec))
}

/// `2^{1-prec}`, a bound on the relative error of one correctly rounded
/// operation plus conversion slack.
fn unit_roundoff(prec: u32) -> f64 {
    2f64.powi(2 - prec as i32).max(f64::MIN_POSITIVE)
}

/// `log q_{n+1} / log q_n - 1` for `1 <= n < K` (zero where `q_n = 1`).
pub fn growth_profile(table: &ConvergentTable) -> Vec<f64> {
    let k = table.depth() as i64;
    (1..k)
        .map(|n| {
            let qn = table.q(n);
            if *qn <= 1 {
                return 0.0;
            }
            let ln = |v: &Integer| Float::with_val(64, v).ln().to_f64();
            (ln(table.q(n + 1)) / ln(qn) - 1.0).max(0.0)
        })
        .collect()
}

/// Empirical Diophantine exponent: the largest growth ratio excess over the
/// last quarter `ceil(3K/4) <= n < K` of the table.
///
/// Early indices are excluded since `log q_n` is tiny there and the ratio
/// says nothing about growth (Fibonacci already gives `0.58` at `n = 2`);
/// [`growth_profile`] has every index.
pub fn growth_exponent(table: &ConvergentTable) -> Result<f64> {
    let k = table.depth();
    if k < 3 {
        return Err(Error::Domain("growth_exponent needs depth >= 3".into()));
    }
    let profile = growth_profile(table);
    let start = (3 * k).div_ceil(4).min(k - 1);
    Ok(profile[start - 1..].iter().copied().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str, k: usize) -> ConvergentTable {
        expand(&s.parse().unwrap(), k, Precision::default()).unwrap()
    }

    #[test]
    fn golden_mean_convergents() {
        let t = table("[0; (1)]", 4);
        let got: Vec<Rational> = (1..=5).map(|n| t.convergent(n)).collect();
        let want: Vec<Rational> = [(1, 1), (1, 2), (2, 3), (3, 5), (5, 8)]
            .iter()
            .map(|&(a, b)| Rational::from((a, b)))
            .collect();
        assert_eq!(got, want);
        assert_eq!(*t.p(-1), 1);
        assert_eq!(*t.q(-2), 1);
        assert_eq!(*t.p(-2), 0);
        assert_eq!(*t.q(-1), 0);
    }

    #[test]
    fn fixed_point_orbit() {
        let t = table("[0; (3)]", 2);
        let eta = (Float::with_val(200, 13).sqrt() - 3) / 2;
        for n in 0..=2 {
            assert!(Float::with_val(200, t.x(n) - &eta).abs() < 1e-48);
        }
        let b1 = Float::with_val(200, &eta * &eta);
        assert!(Float::with_val(200, t.beta(1) - &b1).abs() < 1e-48);
    }

    #[test]
    fn float_seed_truncates() {
        // 0.7 = [0; 1, 2, 3] is rational, so the binary image ends in noise
        let t = table("0.7", 200);
        assert!(!t.is_exact());
        assert!(t.is_truncated());
        // a_3 = 3 sits exactly on an integer and is undecidable
        assert_eq!(t.quotients(), &[1, 2]);
        // 1/√2 = [0; 1, (2)] to 40 digits gives about 50 reliable quotients
        let t = table("0.7071067811865475244008443621048490392848", 200);
        assert!(t.is_truncated());
        assert!(t.depth() > 30, "{}", t.depth());
        assert!(t.quotients()[1..30].iter().all(|&a| a == 2));
    }

    #[test]
    fn float_seed_short_depth_is_complete() {
        let t = table("[0; 4, 0.3183098861837906715377675267450287240689]", 6);
        assert!(!t.is_truncated());
        assert_eq!(t.quotient(1), 4);
        assert_eq!(t.quotient(2), 3);
        assert_eq!(t.quotient(3), 7);
        assert_eq!(t.quotient(4), 15);
    }

    #[test]
    fn exact_binary_rational_is_rejected() {
        let r = expand(&"0.5".parse().unwrap(), 3, Precision::default());
        assert!(matches!(r, Err(Error::RationalInput { depth: 1 })));
    }

    #[test]
    fn growth() {
        assert!(growth_exponent(&table("[0; (1)]", 30)).unwrap() < 0.05);
        assert!(growth_exponent(&table("[0; (5)]", 30)).unwrap() < 0.05);
        let t = table("[0; 1, 2, 1, 10000, (1)]", 30);
        let prof = growth_profile(&t);
        assert!(prof[2] > 1.0, "{prof:?}");
        assert!(growth_exponent(&table("[0; (1)]", 2)).is_err());
    }
}
