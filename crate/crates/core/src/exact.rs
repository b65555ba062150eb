//! Exact-arithmetic helpers: decimal parsing into rationals, decimal
//! rendering, and bracketed square roots of integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parses `"0.5"`, `"2"`, `"-1.25"` or `"3/4"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| err())?;
        let den: BigInt = b.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Renders a rational as a decimal string with `digits` fractional digits,
/// rounded half away from zero.
pub fn to_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = (abs + half).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if neg && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits as usize
        )
    }
}

/// Nearest `f64` of a rational, for display only.
pub fn to_f64(r: &BigRational) -> f64 {
    to_decimal(r, 17).parse().unwrap_or(f64::NAN)
}

/// Integer square root of a non-negative `i128`.
pub fn isqrt(x: i128) -> i128 {
    assert!(x >= 0, "isqrt of negative value");
    (x as u128).sqrt() as i128
}

pub fn is_perfect_square(x: i128) -> bool {
    x >= 0 && {
        let s = isqrt(x);
        s * s == x
    }
}

/// Serde adapter writing a rational as `"p/q"` (or `"p"`).
pub mod ratio_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// [`ratio_str`] for optional values.
pub mod opt_ratio_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<BigRational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A closed rational interval known to contain a real quantity. When the
/// quantity is rational and known exactly, `lower == upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    #[serde(with = "ratio_str")]
    pub lower: BigRational,
    #[serde(with = "ratio_str")]
    pub upper: BigRational,
}

impl Bracket {
    pub fn exact(v: BigRational) -> Self {
        Bracket {
            lower: v.clone(),
            upper: v,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    /// Shift by a rational constant.
    pub fn add(&self, c: &BigRational) -> Bracket {
        Bracket {
            lower: &self.lower + c,
            upper: &self.upper + c,
        }
    }

    /// Quotient by a strictly positive bracket.
    pub fn div_positive(&self, d: &Bracket) -> Bracket {
        assert!(d.lower.is_positive(), "divisor bracket must be positive");
        let cands = [
            &self.lower / &d.lower,
            &self.lower / &d.upper,
            &self.upper / &d.lower,
            &self.upper / &d.upper,
        ];
        let lower = cands.iter().min().expect("non-empty").clone();
        let upper = cands.iter().max().expect("non-empty").clone();
        Bracket { lower, upper }
    }

    /// `c - self`.
    pub fn sub_from(&self, c: &BigRational) -> Bracket {
        Bracket {
            lower: c - &self.upper,
            upper: c - &self.lower,
        }
    }
}

/// Brackets `sqrt(x)` for `x >= 0` to within `10^-digits`; exact when `x`
/// is a perfect square.
pub fn sqrt_bracket(x: i128, digits: u32) -> Bracket {
    assert!(x >= 0, "sqrt of negative value");
    let s = isqrt(x);
    if s * s == x {
        return Bracket::exact(BigRational::from_integer(BigInt::from(s)));
    }
    let scale = BigUint::from(10u32).pow(digits);
    let scaled = BigUint::from(x as u128) * &scale * &scale;
    let root = scaled.sqrt();
    let den = BigInt::from(scale);
    let lo = BigInt::from(root);
    Bracket {
        lower: BigRational::new(lo.clone(), den.clone()),
        upper: BigRational::new(lo + 1, den),
    }
}

pub fn rational(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
