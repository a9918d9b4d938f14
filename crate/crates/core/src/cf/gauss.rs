use rug::Float;

use crate::cf::spec::QUOTIENT_CAP;
use crate::error::{Error, Result};

/// One step of the Gauss map `A(x) = 1/x - floor(1/x)`.
///
/// Returns `(a, x')` with `a = floor(1/x)`. An exactly zero `x'` means the
/// input was rational; the caller decides what to do with it.
pub fn gauss_step(x: &Float) -> Result<(u64, Float)> {
    if !(x.is_finite() && *x > 0 && *x < 1) {
        return Err(Error::Domain(format!("gauss_step needs x in (0, 1), got {x}")));
    }
    let r = Float::with_val(x.prec(), x.recip_ref());
    let a = r.clone().floor();
    if a > QUOTIENT_CAP {
        return Err(Error::QuotientCap {
            quotient: a.to_integer().map_or_else(|| a.to_string(), |i| i.to_string()),
        });
    }
    let a_int = a.to_integer().and_then(|i| i.to_u64()).expect("bounded by the cap");
    let frac = r - &a;
    Ok((a_int, frac))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    #[test]
    fn seven_tenths() {
        let x = Float::with_val(P, Float::parse("0.7").unwrap());
        let (a, y) = gauss_step(&x).unwrap();
        assert_eq!(a, 1);
        let expect = Float::with_val(P, 3) / 7;
        assert!(Float::with_val(P, &y - &expect).abs() < 1e-55);
    }

    #[test]
    fn fixed_point_is_fixed() {
        let eta = (Float::with_val(P, 13).sqrt() - 3) / 2;
        let (a, y) = gauss_step(&eta).unwrap();
        assert_eq!(a, 3);
        assert!(Float::with_val(P, &y - &eta).abs() < 1e-55);
    }

    #[test]
    fn half_terminates() {
        let (a, y) = gauss_step(&Float::with_val(P, 0.5)).unwrap();
        assert_eq!(a, 2);
        assert!(y.is_zero());
    }

    #[test]
    fn domain_errors() {
        for v in [0.0, 1.0, -0.3, 1.5] {
            assert!(matches!(gauss_step(&Float::with_val(P, v)), Err(Error::Domain(_))));
        }
        assert!(matches!(
            gauss_step(&Float::with_val(P, 1e-14)),
            Err(Error::QuotientCap { .. })
        ));
    }
}
