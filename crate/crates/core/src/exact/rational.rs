//! Exact rational scalars and their decimal renderings.
//!
//! `Rational` is a gcd-normalized arbitrary-precision fraction. Every
//! arithmetic operation reduces to lowest terms with a positive denominator,
//! so equality is structural.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// How a fraction is cut to a fixed number of decimal places.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Round to nearest, ties away from zero.
    Nearest,
    /// Drop the remaining digits (round toward zero).
    Truncate,
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (2..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / m!` for `m <= n`.
pub fn falling_ratio(n: u32, m: u32) -> BigInt {
    debug_assert!(m <= n);
    ((m + 1) as u64..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// The exact value of a finite `f64`.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or(Error::NonFinite(x))
}

/// Nearest `f64` to an exact fraction.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out of range for the fast path: fall back to a scaled division.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parse a plain decimal literal such as `-12.0625` into an exact fraction.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, fraction) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(fraction.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{fraction}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10u32), fraction.len());
    let value = Rational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// Render `x` with exactly `places` digits after the decimal point.
pub fn to_decimal(x: &Rational, places: usize, rounding: Rounding) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = x.abs() * Rational::from_integer(scale);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let q = match rounding {
        Rounding::Truncate => q,
        Rounding::Nearest => {
            if r.clone() * 2u32 >= *scaled.denom() {
                q + 1u32
            } else {
                q
            }
        }
    };
    let mut digits = q.to_str_radix(10);
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let split = digits.len() - places;
    let sign = if x.is_negative() && q_is_nonzero(&digits) { "-" } else { "" };
    if places == 0 {
        format!("{sign}{digits}")
    } else {
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

fn q_is_nonzero(digits: &str) -> bool {
    digits.bytes().any(|b| b != b'0')
}

/// Render `x` with `digits` significant digits in plain (non-exponent)
/// notation, correctly rounded.
pub fn to_significant(x: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if x.is_zero() {
        return "0".to_string();
    }
    // exponent e with 10^e <= |x| < 10^(e+1)
    let a = x.abs();
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let ten = int(10);
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            num_traits::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let places = digits as i64 - 1 - e;
    if places >= 0 {
        let s = to_decimal(x, places as usize, Rounding::Nearest);
        // rounding may carry into a new leading digit (9.99.. -> 10.0);
        // one more pass at the new exponent keeps the digit count exact
        let carried = parse_decimal(&s).map(|v| v.abs() >= pow10(e + 1)).unwrap_or(false);
        if carried && places > 0 {
            return to_decimal(x, (places - 1) as usize, Rounding::Nearest);
        }
        s
    } else {
        let unit = pow10(-places);
        let q = (x / &unit).round() * unit;
        to_decimal(&q, 0, Rounding::Nearest)
    }
}

/// Serializable exact fraction: numerator and denominator as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactFraction {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for ExactFraction {
    fn from(x: &Rational) -> Self {
        Self { num: x.numer().to_str_radix(10), den: x.denom().to_str_radix(10) }
    }
}

impl TryFrom<&ExactFraction> for Rational {
    type Error = Error;

    fn try_from(f: &ExactFraction) -> Result<Self> {
        let num: BigInt = f.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", f.num)))?;
        let den: BigInt = f.den.parse().map_err(|_| Error::Parse(format!("bad denominator {:?}", f.den)))?;
        if den.sign() != Sign::Plus {
            return Err(Error::Parse(format!("denominator must be positive, got {}", f.den)));
        }
        Ok(Rational::new(num, den))
    }
}
