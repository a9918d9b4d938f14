//! Continued-fraction descriptions of points of `(0, 1)` and their text form.
//!
//! ```text
//! [0; 2, (1)]          prefix 2, periodic tail 1, 1, 1, ...
//! [0; (3)]             the fixed point η₃ of the Gauss map
//! [0; 1, 4, 0.25]      prefix 1, 4 followed by the float tail 0.25
//! 0.7                  float seed, no exact quotients
//! ```

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Largest partial quotient accepted anywhere in the crate.
pub const QUOTIENT_CAP: u64 = 1_000_000_000_000;

fn check_quotient(a: u64) -> Result<()> {
    if a == 0 {
        return Err(Error::InvalidSpec("partial quotients must be >= 1".into()));
    }
    if a > QUOTIENT_CAP {
        return Err(Error::QuotientCap {
            quotient: a.to_string(),
        });
    }
    Ok(())
}

/// A plain decimal in `(0, 1)`, kept as its digit string so that printing
/// reproduces the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecimalSeed {
    /// Digits after `0.`, without trailing zeros, not all zero.
    frac: String,
}

impl DecimalSeed {
    pub fn digits(&self) -> &str {
        &self.frac
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> Rational {
        let num: Integer = self.frac.parse().expect("validated digit string");
        let den = Integer::from(10).pow(self.frac.len() as u32);
        Rational::from((num, den))
    }

    /// Nearest binary float at `prec` bits.
    pub fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, self.to_rational())
    }

    fn parse_at(s: &str, offset: usize) -> Result<Self> {
        let rest = s.strip_prefix("0.").ok_or_else(|| Error::Parse {
            pos: offset,
            msg: "a decimal seed must start with `0.`".into(),
        })?;
        if rest.is_empty() {
            return Err(Error::Parse {
                pos: offset + 2,
                msg: "missing digits after `0.`".into(),
            });
        }
        if let Some(i) = rest.find(|c: char| !c.is_ascii_digit()) {
            return Err(Error::Parse {
                pos: offset + 2 + i,
                msg: "unexpected character in decimal seed".into(),
            });
        }
        let frac = rest.trim_end_matches('0');
        if frac.is_empty() {
            return Err(Error::InvalidSpec("decimal seed must lie in (0, 1)".into()));
        }
        Ok(Self { frac: frac.to_owned() })
    }
}

impl FromStr for DecimalSeed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_at(s.trim(), 0)
    }
}

impl fmt::Display for DecimalSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.{}", self.frac)
    }
}

/// How the expansion continues after the exact prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Repeated block of partial quotients.
    Periodic(Vec<u64>),
    /// Floating tail value `A^d(x)`; the expansion is no longer exact.
    Seed(DecimalSeed),
}

/// A point of `(0, 1)` given by its partial quotients `a_1, a_2, ...`.
///
/// A prefix alone would denote a rational, where `B_σ = +∞`, so every spec
/// carries a [`Tail`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfSpec {
    prefix: Vec<u64>,
    tail: Tail,
}

impl CfSpec {
    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidSpec("period must be nonempty".into()));
        }
        for &a in prefix.iter().chain(&period) {
            check_quotient(a)?;
        }
        Ok(Self {
            prefix,
            tail: Tail::Periodic(period),
        })
    }

    pub fn seeded(prefix: Vec<u64>, seed: DecimalSeed) -> Result<Self> {
        for &a in &prefix {
            check_quotient(a)?;
        }
        Ok(Self {
            prefix,
            tail: Tail::Seed(seed),
        })
    }

    /// `[0; (m)]`, the fixed point `η_m` of the Gauss map.
    pub fn fixed_point(m: u64) -> Result<Self> {
        Self::periodic(Vec::new(), vec![m])
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn period(&self) -> Option<&[u64]> {
        match &self.tail {
            Tail::Periodic(p) => Some(p),
            Tail::Seed(_) => None,
        }
    }

    pub fn seed(&self) -> Option<&DecimalSeed> {
        match &self.tail {
            Tail::Seed(s) => Some(s),
            Tail::Periodic(_) => None,
        }
    }

    /// True when every partial quotient is known exactly.
    pub fn is_exact(&self) -> bool {
        matches!(self.tail, Tail::Periodic(_))
    }

    /// `a_n` for `n >= 1`, when this point determines it.
    pub fn quotient(&self, n: usize) -> Option<u64> {
        assert!(n >= 1, "partial quotients are indexed from 1");
        let d = self.prefix.len();
        if n <= d {
            return Some(self.prefix[n - 1]);
        }
        self.period().map(|p| p[(n - d - 1) % p.len()])
    }

    /// The point `A(x)`: the first quotient is dropped (a purely periodic
    /// tail is rotated instead).
    pub fn shift(&self) -> Result<Self> {
        if !self.prefix.is_empty() {
            return Ok(Self {
                prefix: self.prefix[1..].to_vec(),
                tail: self.tail.clone(),
            });
        }
        match &self.tail {
            Tail::Periodic(p) => {
                let mut rotated = p[1..].to_vec();
                rotated.push(p[0]);
                Ok(Self {
                    prefix: Vec::new(),
                    tail: Tail::Periodic(rotated),
                })
            }
            Tail::Seed(_) => Err(Error::InvalidSpec(
                "cannot shift a bare float seed exactly".into(),
            )),
        }
    }

    /// The point `[0; head, a_1, a_2, ...]`.
    pub fn prepend(&self, head: &[u64]) -> Result<Self> {
        for &a in head {
            check_quotient(a)?;
        }
        let mut prefix = head.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Ok(Self {
            prefix,
            tail: self.tail.clone(),
        })
    }
}

impl fmt::Display for CfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            if let Tail::Seed(s) = &self.tail {
                return write!(f, "{s}");
            }
        }
        f.write_str("[0; ")?;
        for a in &self.prefix {
            write!(f, "{a}, ")?;
        }
        match &self.tail {
            Tail::Periodic(p) => {
                f.write_str("(")?;
                for (i, b) in p.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{b}")?;
                }
                f.write_str(")]")
            }
            Tail::Seed(s) => write!(f, "{s}]"),
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    /// A run of digits and dots.
    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || c == '.'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn quotient(&mut self) -> Result<u64> {
        let start = self.pos;
        let tok = self.token();
        if tok.is_empty() || tok.contains('.') {
            self.pos = start;
            self.skip_ws();
            return self.err("expected a positive integer");
        }
        let value: u64 = match tok.parse() {
            Ok(v) => v,
            Err(_) => {
                return Err(Error::QuotientCap {
                    quotient: tok.to_owned(),
                })
            }
        };
        if value == 0 {
            self.pos = start;
            self.skip_ws();
            return self.err("partial quotients must be >= 1");
        }
        check_quotient(value)?;
        Ok(value)
    }
}

impl FromStr for CfSpec {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let mut cur = Cursor { src, pos: 0 };
        cur.skip_ws();
        if cur.peek() != Some('[') {
            let start = cur.pos;
            let seed = DecimalSeed::parse_at(src[start..].trim_end(), start)?;
            return CfSpec::seeded(Vec::new(), seed);
        }
        cur.eat('[')?;
        let start = cur.pos;
        if cur.token() != "0" {
            cur.pos = start;
            cur.skip_ws();
            return cur.err("expected integer part `0`");
        }
        cur.eat(';')?;

        let mut prefix = Vec::new();
        let mut tail = None;
        cur.skip_ws();
        if cur.peek() != Some(']') {
            loop {
                cur.skip_ws();
                if tail.is_some() {
                    return cur.err("nothing may follow the period or the seed");
                }
                match cur.peek() {
                    Some('(') => {
                        cur.eat('(')?;
                        let mut period = vec![cur.quotient()?];
                        loop {
                            cur.skip_ws();
                            match cur.peek() {
                                Some(',') => {
                                    cur.eat(',')?;
                                    period.push(cur.quotient()?);
                                }
                                Some(')') => {
                                    cur.eat(')')?;
                                    break;
                                }
                                _ => return cur.err("expected `,` or `)` in period"),
                            }
                        }
                        tail = Some(Tail::Periodic(period));
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let start = cur.pos;
                        let tok = cur.token();
                        if tok.contains('.') {
                            tail = Some(Tail::Seed(DecimalSeed::parse_at(tok, start)?));
                        } else {
                            cur.pos = start;
                            prefix.push(cur.quotient()?);
                        }
                    }
                    _ => return cur.err("expected a quotient, a period or a seed"),
                }
                cur.skip_ws();
                match cur.peek() {
                    Some(',') => cur.eat(',')?,
                    Some(']') => break,
                    _ => return cur.err("expected `,` or `]`"),
                }
            }
        }
        cur.eat(']')?;
        cur.skip_ws();
        if cur.pos != src.len() {
            return cur.err("trailing characters after `]`");
        }
        match tail {
            Some(Tail::Periodic(p)) => CfSpec::periodic(prefix, p),
            Some(Tail::Seed(s)) => CfSpec::seeded(prefix, s),
            None => Err(Error::InvalidSpec(
                "a finite expansion denotes a rational; give a period or a seed".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_compact_and_spaced_forms() {
        let a: CfSpec = "[0;(3)]".parse().unwrap();
        let b: CfSpec = " [ 0 ; ( 3 ) ] ".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, CfSpec::fixed_point(3).unwrap());
        assert_eq!(a.to_string(), "[0; (3)]");
    }

    #[test]
    fn prefix_and_period() {
        let s: CfSpec = "[0; 1, 2, 1, 10000, (1)]".parse().unwrap();
        assert_eq!(s.prefix(), &[1, 2, 1, 10000]);
        assert_eq!(s.period(), Some(&[1u64][..]));
        assert_eq!(s.quotient(4), Some(10000));
        assert_eq!(s.quotient(9), Some(1));
    }

    #[test]
    fn seeds_with_and_without_prefix() {
        let s: CfSpec = "0.7".parse().unwrap();
        assert_eq!(s.seed().unwrap().digits(), "7");
        assert!(!s.is_exact());
        let t: CfSpec = "[0; 1, 4, 0.250]".parse().unwrap();
        assert_eq!(t.prefix(), &[1, 4]);
        assert_eq!(t.to_string(), "[0; 1, 4, 0.25]");
        assert_eq!(t.quotient(3), None);
    }

    #[test]
    fn rejects_rationals_and_garbage() {
        assert!(matches!("[0; 1, 2]".parse::<CfSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("[0;]".parse::<CfSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("[0; 0, (1)]".parse::<CfSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("[1; (1)]".parse::<CfSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("[0; (1), 2]".parse::<CfSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("[0; ()]".parse::<CfSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("[0; (1)] x".parse::<CfSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("0.000".parse::<CfSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("1.5".parse::<CfSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("[0; 1.2.3]".parse::<CfSpec>(), Err(Error::Parse { .. })));
        assert!(matches!(
            "[0; (1000000000001)]".parse::<CfSpec>(),
            Err(Error::QuotientCap { .. })
        ));
        assert!(matches!(
            "[0; (99999999999999999999999)]".parse::<CfSpec>(),
            Err(Error::QuotientCap { .. })
        ));
    }

    #[test]
    fn shift_drops_prefix_then_rotates() {
        let s: CfSpec = "[0; 2, (1, 3)]".parse().unwrap();
        let a = s.shift().unwrap();
        assert_eq!(a.to_string(), "[0; (1, 3)]");
        assert_eq!(a.shift().unwrap().to_string(), "[0; (3, 1)]");
    }

    #[test]
    fn decimal_seed_value() {
        let d: DecimalSeed = "0.125".parse().unwrap();
        assert_eq!(d.to_rational(), Rational::from((1, 8)));
    }

    fn spec_strategy() -> impl Strategy<Value = CfSpec> {
        let q = 1u64..=QUOTIENT_CAP;
        let small = 1u64..50;
        let prefix = prop::collection::vec(prop_oneof![small.clone(), q.clone()], 0..6);
        let period = prop::collection::vec(prop_oneof![small, q], 1..5);
        let seed = "[0-9]{0,12}[1-9]".prop_map(|d| format!("0.{d}").parse::<DecimalSeed>().unwrap());
        prop_oneof![
            (prefix.clone(), period).prop_map(|(p, t)| CfSpec::periodic(p, t).unwrap()),
            (prefix, seed).prop_map(|(p, s)| CfSpec::seeded(p, s).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(spec in spec_strategy()) {
            let text = spec.to_string();
            let back: CfSpec = text.parse().unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn parser_never_panics(s in "\\PC{0,40}") {
            let _ = s.parse::<CfSpec>();
        }
    }
}
