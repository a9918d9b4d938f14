//! Certificate that `F(x) = x - 2w(x)/x²` is a contraction of `J = [0, 1/10]`.
//!
//! `F` has the removable singularity of `w/x²` at the origin. The piece
//! touching `0` is handled with the exact rational Taylor coefficients of
//! `w` at `0` (`w_0 = w_1 = w_2 = 0`, `w_3 = 1/2`) plus a Lagrange remainder:
//!
//! ```text
//! F(x)  = x (1 - 2 Σ_{k>=3} w_k x^{k-3})
//! F'(x) = 1 - 2 Σ_{k>=3} (k-2) w_k x^{k-3}
//! ```
//!
//! Every other piece uses a Taylor form of `F` about its midpoint, with the
//! coefficients produced by interval automatic differentiation.

use rug::{Float, Rational};

use super::lemma;
use super::series::{taylor_form, Series};
use super::{subdivide, unit_tenth, Interval, Outcome, Verdict};
use crate::error::{Error, Result};
use crate::precision::Precision;

const ORDER: usize = 12;
const ESCALATIONS: u32 = 4;

/// Bounds on one subinterval.
#[derive(Debug, Clone)]
pub struct PieceBound {
    pub piece: Interval,
    /// Enclosure of `F'` over the piece.
    pub fprime: Interval,
    /// Enclosure of `F` over the piece.
    pub image: Interval,
}

#[derive(Debug, Clone)]
pub struct ContractionCertificate {
    pub domain: Interval,
    pub subdivision: Vec<PieceBound>,
    /// Largest upper bound of `F'` over all pieces.
    pub max_fprime: Float,
    pub verdict: Verdict,
    /// Working precision of the final attempt, in bits.
    pub precision_bits: u32,
}

impl ContractionCertificate {
    pub fn passed(&self) -> bool {
        self.verdict.is_certified()
    }
}

/// Exact Taylor coefficients of `w` at `0`, up to `x^{ORDER - 1}`.
fn origin_coefficients() -> Result<Vec<Rational>> {
    let x = Series::variable(Rational::new(), ORDER - 1);
    let head = lemma::w(&x)?.into_coeffs();
    if head[..3].iter().any(|c| *c != 0) || head[3] != (1, 2) {
        return Err(Error::Inconclusive(
            "unexpected low-order coefficients of w at the origin".into(),
        ));
    }
    Ok(head)
}

/// `F` and `F'` on a piece `[0, b]`.
fn origin_piece(head: &[Rational], x: &Interval) -> Result<(Interval, Interval)> {
    let prec = x.prec();
    // Enclosure of w^{(N)}(ξ)/N! for ξ in [0, b].
    let rem = lemma::w(&Series::variable(x.clone(), ORDER))?.coeff(ORDER).clone();

    // Q(x) = Σ_{k=3}^{N-1} w_k x^{k-3} + R x^{N-3}
    let mut q = rem.clone();
    for c in head[3..].iter().rev() {
        q = Interval::from_rational(c, prec).add(&q.mul(x));
    }
    // P(x) = Σ (k-2) w_k x^{k-3} + (N R' - 2 R) x^{N-3}, R and R' independent.
    let mut p = rem.mul_int(ORDER as i64).sub(&rem.mul_int(2));
    for (k, c) in head.iter().enumerate().skip(3).rev() {
        let ck = Interval::from_rational(&Rational::from(c * (k as i64 - 2)), prec);
        p = ck.add(&p.mul(x));
    }
    let one = Interval::from_int(1, prec);
    let image = x.mul(&one.sub(&q.mul_int(2)));
    let fprime = one.sub(&p.mul_int(2));
    Ok((image, fprime))
}

/// `F` and `F'` on a piece `[a, b]` with `a > 0`.
fn taylor_piece(x: &Interval) -> Result<(Interval, Interval)> {
    let c = Interval::point(x.mid());
    let h = x.sub(&c);
    let at_c = lemma::contraction_map(&Series::variable(c, ORDER - 1))?.into_coeffs();
    let over_x = lemma::contraction_map(&Series::variable(x.clone(), ORDER))?;
    Ok(taylor_form(&at_c, over_x.coeff(ORDER), &h))
}

fn attempt(limit: usize, prec: u32, head: &[Rational]) -> ContractionCertificate {
    let domain = unit_tenth(prec);
    let half = Float::with_val(prec, 0.5);
    let top = domain.hi().clone();
    let check = |x: &Interval| -> Outcome<(Interval, Interval)> {
        let res = if x.lo().is_zero() {
            origin_piece(head, x)
        } else {
            taylor_piece(x)
        };
        let (image, fprime) = match res {
            Ok(v) => v,
            Err(_) => {
                let wide = Interval::with_infinite_hi(Float::with_val(prec, rug::float::Special::NegInfinity));
                return Outcome::Split((wide.clone(), wide));
            }
        };
        let fits = *image.lo() >= 0 && *image.hi() <= top;
        if *fprime.hi() <= half && fits {
            Outcome::Pass((image, fprime))
        } else if *fprime.lo() > half || *image.hi() < 0 || *image.lo() > top {
            Outcome::Refute((image, fprime))
        } else {
            Outcome::Split((image, fprime))
        }
    };
    let (pieces, verdict) = subdivide(domain.clone(), limit, check);
    let subdivision: Vec<PieceBound> = pieces
        .into_iter()
        .map(|(piece, (image, fprime))| PieceBound { piece, fprime, image })
        .collect();
    let max_fprime = subdivision
        .iter()
        .map(|p| p.fprime.hi().clone())
        .fold(Float::with_val(prec, rug::float::Special::NegInfinity), |a, b| if b > a { b } else { a });
    ContractionCertificate {
        domain,
        subdivision,
        max_fprime,
        verdict,
        precision_bits: prec,
    }
}

/// Certifies `F' <= 1/2` and `F(J) ⊆ J` on `J = [0, 1/10]`, using at most
/// `subdivision_limit` pieces. An inconclusive run is retried at twice the
/// precision, up to four times.
pub fn verify_contraction(subdivision_limit: usize, precision: Precision) -> Result<ContractionCertificate> {
    if subdivision_limit == 0 {
        return Err(Error::Domain("subdivision limit must be at least 1".into()));
    }
    let head = origin_coefficients()?;
    let mut prec = precision.bits();
    let mut cert = attempt(subdivision_limit, prec, &head);
    for _ in 0..ESCALATIONS {
        if cert.verdict != Verdict::Inconclusive {
            break;
        }
        prec *= 2;
        cert = attempt(subdivision_limit, prec, &head);
    }
    Ok(cert)
}
