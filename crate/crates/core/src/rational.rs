//! Exact rational helpers on top of [`num::BigRational`].

use num::bigint::{BigInt, BigUint, Sign};
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_biguint(value: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value.clone()))
}

/// Decimal exponents beyond this are rejected rather than expanded.
const MAX_EXPONENT: u32 = 4096;

/// Parses `"p/q"`, plain integers, and decimal forms such as `"-1.25"` or
/// `"3e-2"` exactly.
pub fn parse(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            if exp.unsigned_abs() > MAX_EXPONENT {
                return Err(err());
            }
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let joined = format!("{whole}{frac}");
    let mut value = BigInt::parse_bytes(joined.as_bytes(), 10).ok_or_else(err)?;
    if negative {
        value = -value;
    }
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u8);
    let out = if scale >= 0 {
        Rational::from_integer(value * num::pow(ten, scale as usize))
    } else {
        Rational::new(value, num::pow(ten, (-scale) as usize))
    };
    Ok(out)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion for display only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

/// `⌊value⌋` for a nonnegative rational.
pub fn floor_nonneg(value: &Rational) -> BigUint {
    debug_assert!(!value.is_negative());
    let floor = value.floor().to_integer();
    match floor.sign() {
        Sign::Minus => BigUint::zero(),
        _ => floor.magnitude().clone(),
    }
}

pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}
