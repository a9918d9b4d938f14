use std::fmt;

use crate::error::{Error, Result};

/// Working precision in significant decimal digits.
///
/// Multiprecision values carry `bits()` of mantissa, which includes a
/// fixed allowance of guard bits on top of the decimal request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

const GUARD_BITS: u32 = 16;

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 50;
    pub const MIN_DIGITS: u32 = 5;

    pub fn digits(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Domain(format!(
                "precision must be at least {} digits, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        if digits > 100_000 {
            return Err(Error::Domain(format!("precision {digits} digits is too large")));
        }
        Ok(Self(digits))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Mantissa bits: `ceil(digits * log2(10)) + guard`.
    pub fn bits(self) -> u32 {
        ((self.0 as f64) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// `self` with the digit count multiplied by `factor`.
    pub fn scaled(self, factor: u32) -> Self {
        Self(self.0.saturating_mul(factor))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self(Self::DEFAULT_DIGITS)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

/// Version string of the MPFR library this build links against.
pub fn mpfr_version() -> String {
    // SAFETY: mpfr_get_version returns a pointer to a static NUL-terminated string.
    let v = unsafe { std::ffi::CStr::from_ptr(gmp_mpfr_sys::mpfr::get_version()) };
    v.to_string_lossy().into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_fifty_digits() {
        let p = Precision::default();
        assert_eq!(p.get(), 50);
        assert!(p.bits() >= 167);
    }

    #[test]
    fn rejects_tiny_precision() {
        assert!(Precision::digits(2).is_err());
        assert!(Precision::digits(20).is_ok());
    }
}
