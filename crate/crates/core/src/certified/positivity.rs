//! Sign certificates: `δ_n = g(ξ_n) - B_n(η_{n+1}) > 0` for ranges of `n`,
//! `w > 0` on intervals and `Ψ < 0` on `(0, 1]`.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use super::lemma;
use super::series::{factored_at_origin, taylor_form, Analytic, Series};
use super::{subdivide, Interval, Outcome, Verdict};
use crate::bounds;
use crate::error::{Error, Result};
use crate::eval;
use crate::precision::Precision;

const ORDER: usize = 10;
const ESCALATIONS: u32 = 4;

/// One `n` of [`check_w_positive`].
#[derive(Debug, Clone)]
pub struct MarginEntry {
    pub n: u64,
    /// Enclosure of `δ_n`.
    pub margin: Interval,
    pub verdict: Verdict,
    pub precision_bits: u32,
}

#[derive(Debug, Clone)]
pub struct WPositiveCertificate {
    pub entries: Vec<MarginEntry>,
    pub verdict: Verdict,
}

impl WPositiveCertificate {
    /// The `n` whose margin could not be shown positive.
    pub fn failures(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| !e.verdict.is_certified())
            .map(|e| e.n)
            .collect()
    }
}

/// Enclosure of `δ_n = g(ξ_n) - B_n(η_{n+1})` at `σ = n`, `ξ_n = n/(n²+1)`.
pub fn localization_margin(n: u64, prec: u32) -> Result<Interval> {
    let sigma = Interval::from_int(n as i64, prec);
    let xi = Interval::from_rational(&Rational::from((Integer::from(n), Integer::from(n) * n + 1u32)), prec);
    let g = bounds::g_enclosure(&xi, &sigma)?;
    let b = eval::fixed_point_enclosure(n + 1, &sigma, prec)?;
    Ok(g.sub(&b))
}

fn margin_entry(n: u64, bits: u32) -> MarginEntry {
    let mut prec = bits;
    let mut last = None;
    for _ in 0..=ESCALATIONS {
        if let Ok(m) = localization_margin(n, prec) {
            let verdict = if m.is_positive() {
                Verdict::Certified
            } else if *m.hi() < 0 {
                Verdict::Refuted
            } else {
                Verdict::Inconclusive
            };
            let done = verdict != Verdict::Inconclusive;
            last = Some(MarginEntry {
                n,
                margin: m,
                verdict,
                precision_bits: prec,
            });
            if done {
                break;
            }
        }
        prec *= 2;
    }
    last.unwrap_or_else(|| MarginEntry {
        n,
        margin: Interval::with_infinite_hi(Float::with_val(prec, rug::float::Special::NegInfinity)),
        verdict: Verdict::Inconclusive,
        precision_bits: prec,
    })
}

/// Certifies `g(ξ_n) > B_n(η_{n+1})` for every `n_lo <= n <= n_hi`.
pub fn check_w_positive(n_lo: u64, n_hi: u64, precision: Precision) -> Result<WPositiveCertificate> {
    if n_lo < 2 || n_lo > n_hi {
        return Err(Error::Domain(format!("need 2 <= n_lo <= n_hi, got {n_lo}..{n_hi}")));
    }
    let bits = precision.bits();
    let entries: Vec<MarginEntry> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| margin_entry(n, bits))
        .collect();
    let verdict = entries.iter().fold(Verdict::Certified, |v, e| v.and(e.verdict));
    Ok(WPositiveCertificate { entries, verdict })
}

/// A function that can be evaluated on any [`Analytic`] carrier.
trait Formula: Sync {
    fn eval<T: Analytic>(&self, x: &T) -> Result<T>;
}

struct W;
impl Formula for W {
    fn eval<T: Analytic>(&self, x: &T) -> Result<T> {
        lemma::w(x)
    }
}

struct NegPsi;
impl Formula for NegPsi {
    fn eval<T: Analytic>(&self, x: &T) -> Result<T> {
        Ok(lemma::psi(x)?.scale(-1))
    }
}

#[derive(Debug, Clone)]
pub struct SignPiece {
    pub piece: Interval,
    /// Power of `x` factored out at the origin (`0` away from it).
    pub origin_factor: usize,
    /// Enclosure of `f(x) / x^origin_factor` over the piece.
    pub value: Interval,
}

#[derive(Debug, Clone)]
pub struct SignCertificate {
    pub domain: Interval,
    pub pieces: Vec<SignPiece>,
    pub verdict: Verdict,
    pub precision_bits: u32,
}

fn certify_positive<F: Formula>(f: &F, domain: &Interval, limit: usize, prec: u32) -> Result<SignCertificate> {
    let head = if domain.lo().is_zero() {
        Some(f.eval(&Series::variable(Rational::new(), ORDER - 1))?.into_coeffs())
    } else {
        None
    };
    let check = |x: &Interval| -> Outcome<(usize, Interval)> {
        let res = if x.lo().is_zero() {
            let head = head.as_ref().expect("origin coefficients");
            f.eval(&Series::variable(x.clone(), ORDER))
                .map(|s| factored_at_origin(head, s.coeff(ORDER), x))
        } else {
            let c = Interval::point(x.mid());
            let h = x.sub(&c);
            f.eval(&Series::variable(c, ORDER - 1)).and_then(|at_c| {
                let rem = f.eval(&Series::variable(x.clone(), ORDER))?;
                Ok((0, taylor_form(at_c.coeffs(), rem.coeff(ORDER), &h).0))
            })
        };
        match res {
            Ok((s, v)) if v.is_positive() => Outcome::Pass((s, v)),
            Ok((s, v)) if *v.hi() < 0 && s == 0 => Outcome::Refute((s, v)),
            Ok((s, v)) => Outcome::Split((s, v)),
            Err(_) => Outcome::Split((
                0,
                Interval::with_infinite_hi(Float::with_val(prec, rug::float::Special::NegInfinity)),
            )),
        }
    };
    let (pieces, verdict) = subdivide(domain.clone(), limit, check);
    Ok(SignCertificate {
        domain: domain.clone(),
        pieces: pieces
            .into_iter()
            .map(|(piece, (origin_factor, value))| SignPiece {
                piece,
                origin_factor,
                value,
            })
            .collect(),
        verdict,
        precision_bits: prec,
    })
}

fn with_escalation<F: Formula>(
    f: &F,
    lo: &Rational,
    hi: &Rational,
    limit: usize,
    precision: Precision,
) -> Result<SignCertificate> {
    if *lo < 0 || *hi > 1 || lo >= hi {
        return Err(Error::Domain(format!("need 0 <= lo < hi <= 1, got [{lo}, {hi}]")));
    }
    if limit == 0 {
        return Err(Error::Domain("subdivision limit must be at least 1".into()));
    }
    let mut prec = precision.bits();
    let domain = |prec| {
        let a = Interval::from_rational(lo, prec);
        let b = Interval::from_rational(hi, prec);
        Interval::new(a.lo().clone(), b.hi().clone()).expect("ordered")
    };
    let mut cert = certify_positive(f, &domain(prec), limit, prec)?;
    for _ in 0..ESCALATIONS {
        if cert.verdict != Verdict::Inconclusive {
            break;
        }
        prec *= 2;
        cert = certify_positive(f, &domain(prec), limit, prec)?;
    }
    Ok(cert)
}

/// Certifies `w > 0` on `[lo, hi]` (on `(0, hi]` when `lo = 0`).
pub fn w_positive_on(lo: &Rational, hi: &Rational, limit: usize, precision: Precision) -> Result<SignCertificate> {
    with_escalation(&W, lo, hi, limit, precision)
}

/// Certifies `Ψ(x) = 1 + x + x² - (1+x)^{1+x} < 0` on `(0, 1]`. The pieces
/// carry enclosures of `-Ψ`.
pub fn psi_negative(limit: usize, precision: Precision) -> Result<SignCertificate> {
    with_escalation(&NegPsi, &Rational::new(), &Rational::from(1), limit, precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_at_two() {
        let m = localization_margin(2, 200).unwrap();
        assert!((m.mid().to_f64() - 0.0138112).abs() < 1e-4, "{m}");
    }

    #[test]
    fn margin_equals_scaled_w() {
        // δ_n = n^{1/n} w(1/n)
        for n in [3u64, 10, 57] {
            let prec = 256;
            let x = Interval::ratio(1, n as i64, prec);
            let scale = Interval::from_int(n as i64, prec)
                .ln()
                .unwrap()
                .div_int(n as i64)
                .unwrap()
                .exp();
            let via_w = lemma::w_fn(&x).unwrap().mul(&scale);
            let direct = localization_margin(n, prec).unwrap();
            assert!(via_w.sub(&direct).mag() < 1e-60, "n = {n}");
        }
    }

    #[test]
    fn small_range() {
        let cert = check_w_positive(2, 12, Precision::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert!(cert.failures().is_empty());
        assert!(check_w_positive(1, 3, Precision::default()).is_err());
    }

    #[test]
    fn psi_is_negative() {
        let cert = psi_negative(256, Precision::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert_eq!(cert.pieces[0].origin_factor, 3);
    }

    #[test]
    fn w_on_tail_interval() {
        let cert = w_positive_on(&Rational::from((1, 800)), &Rational::from((1, 100)), 512, Precision::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
    }
}
