//! Exact rational scalars with an irrational-tagged float fallback.
//!
//! The representability question is Diophantine: lattice spacings and shifts
//! must be compared exactly, and float equality would manufacture spurious
//! cancellations. Parameters given as fractions or finite decimals are kept
//! as `Ratio<i128>`; anything else carries a tagged float, and every result
//! that depends on such a value is reported as numerically certified only.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

pub type Rational = Ratio<i128>;

/// A scalar that is either an exact rational or an irrational-tagged float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exact {
    Rational(Rational),
    Irrational(f64),
}

impl Exact {
    pub fn rational(num: i128, den: i128) -> Self {
        Exact::Rational(Rational::new(num, den))
    }

    pub fn integer(n: i128) -> Self {
        Exact::Rational(Rational::from_integer(n))
    }

    pub fn zero() -> Self {
        Exact::integer(0)
    }

    pub fn one() -> Self {
        Exact::integer(1)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Exact::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Exact::Irrational(x) => x,
        }
    }

    pub fn as_rational(self) -> Option<Rational> {
        match self {
            Exact::Rational(r) => Some(r),
            Exact::Irrational(_) => None,
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Exact::Rational(_))
    }

    pub fn is_zero(self) -> bool {
        match self {
            Exact::Rational(r) => r.is_zero(),
            Exact::Irrational(x) => x == 0.0,
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            Exact::Rational(r) => r.is_positive(),
            Exact::Irrational(x) => x > 0.0,
        }
    }

    /// Multiplicative inverse; keeps exactness.
    pub fn recip(self) -> Exact {
        match self {
            Exact::Rational(r) => Exact::Rational(r.recip()),
            Exact::Irrational(x) => Exact::Irrational(1.0 / x),
        }
    }

    pub fn neg(self) -> Exact {
        match self {
            Exact::Rational(r) => Exact::Rational(-r),
            Exact::Irrational(x) => Exact::Irrational(-x),
        }
    }

    /// Reconstruct a small rational from a float when one reproduces the
    /// exact bit pattern (so `0.6` becomes `3/5`); otherwise tag the float
    /// as irrational. Denominators are capped so near-rational irrationals
    /// are not misclassified.
    pub fn from_f64(x: f64) -> Exact {
        if !x.is_finite() {
            return Exact::Irrational(x);
        }
        if x == x.trunc() && x.abs() < 1e15 {
            return Exact::integer(x as i128);
        }
        // Continued-fraction convergents with denominator <= 1e6.
        let (mut h0, mut h1): (i128, i128) = (1, 0);
        let (mut k0, mut k1): (i128, i128) = (0, 1);
        let mut v = x.abs();
        for _ in 0..40 {
            let a = v.floor();
            if a.abs() >= 1e15 {
                break;
            }
            let ai = a as i128;
            let h2 = ai.saturating_mul(h0).saturating_add(h1);
            let k2 = ai.saturating_mul(k0).saturating_add(k1);
            if k2 > 1_000_000 || k2 <= 0 {
                break;
            }
            let cand = h2 as f64 / k2 as f64;
            if cand == x.abs() {
                let sign = if x < 0.0 { -1 } else { 1 };
                return Exact::Rational(Rational::new(sign * h2, k2));
            }
            h1 = h0;
            h0 = h2;
            k1 = k0;
            k0 = k2;
            let frac = v - a;
            if frac <= 0.0 {
                break;
            }
            v = 1.0 / frac;
        }
        Exact::Irrational(x)
    }
}

/// Parse "p/q", a finite decimal (kept exact: "0.3" -> 3/10), or a
/// "~"-prefixed float that is explicitly tagged irrational.
impl FromStr for Exact {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('~') {
            let x: f64 = rest
                .parse()
                .map_err(|_| format!("cannot parse `{s}` as a number"))?;
            return Ok(Exact::Irrational(x));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let q: i128 = q.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if q == 0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            return Ok(Exact::Rational(Rational::new(p, q)));
        }
        if let Some(r) = parse_decimal(s) {
            return Ok(Exact::Rational(r));
        }
        let x: f64 = s
            .parse()
            .map_err(|_| format!("cannot parse `{s}` as a number"))?;
        Ok(Exact::from_f64(x))
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1i128, b),
        None => (1i128, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() || body.contains(['e', 'E']) {
        return s.parse::<i128>().ok().map(Rational::from_integer);
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if int_part.len() + frac_part.len() > 24 {
        return None;
    }
    let int: i128 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let mut num = int;
    let mut den: i128 = 1;
    for c in frac_part.chars() {
        num = num.checked_mul(10)?.checked_add((c as u8 - b'0') as i128)?;
        den = den.checked_mul(10)?;
    }
    Some(Rational::new(sign * num, den))
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rational(r) => {
                if r.denom() == &1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Exact::Irrational(x) => write!(f, "{x}"),
        }
    }
}

// Wire form: rationals as "p/q" strings, reals as numbers.
impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Exact::Rational(_) => ser.serialize_str(&self.to_string()),
            Exact::Irrational(x) => ser.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct ExactVisitor;
        impl<'de> Visitor<'de> for ExactVisitor {
            type Value = Exact;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a \"p/q\" string or a number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exact, E> {
                Ok(Exact::from_f64(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact::integer(v as i128))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(Exact::integer(v as i128))
            }
        }
        de.deserialize_any(ExactVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("3/5".parse::<Exact>().unwrap(), Exact::rational(3, 5));
        assert_eq!("0.3".parse::<Exact>().unwrap(), Exact::rational(3, 10));
        assert_eq!("-1.25".parse::<Exact>().unwrap(), Exact::rational(-5, 4));
        assert_eq!("2".parse::<Exact>().unwrap(), Exact::integer(2));
        assert!(matches!(
            "~0.7071067811865476".parse::<Exact>().unwrap(),
            Exact::Irrational(_)
        ));
    }

    #[test]
    fn float_reconstruction() {
        assert_eq!(Exact::from_f64(0.5), Exact::rational(1, 2));
        assert_eq!(Exact::from_f64(0.6), Exact::rational(3, 5));
        assert_eq!(Exact::from_f64(3.0), Exact::integer(3));
        assert!(matches!(
            Exact::from_f64(std::f64::consts::SQRT_2 / 2.0),
            Exact::Irrational(_)
        ));
    }

    #[test]
    fn json_round_trip() {
        let e: Exact = serde_json::from_str("\"1/2\"").unwrap();
        assert_eq!(e, Exact::rational(1, 2));
        assert_eq!(serde_json::to_string(&e).unwrap(), "\"1/2\"");
        let e: Exact = serde_json::from_str("0.25").unwrap();
        assert_eq!(e, Exact::rational(1, 4));
    }
}
