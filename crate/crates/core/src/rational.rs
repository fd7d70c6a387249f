//! Exact rational helpers shared by every module.
//!
//! Costs, profits, weights and exponents are all [`Rational`]s (arbitrary
//! precision, always in lowest terms with a positive denominator). The helpers
//! here cover the few operations the algorithms need beyond field arithmetic:
//! powers of two, floor/ceil of `log2`, parsing from decimal or fraction
//! strings, and conversion of a slice to a common integer scale so hot loops
//! can run on machine integers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

fn bits(v: &BigInt) -> i64 {
    v.bits() as i64
}

/// Largest `e` with `2^e <= x`. `x` must be positive.
pub fn floor_log2(x: &Rational) -> i64 {
    assert!(x.is_positive(), "floor_log2 of non-positive value");
    let (n, d) = (x.numer(), x.denom());
    // 2^(bits(n)-1) <= n < 2^bits(n), same for d, so the answer is one of two values.
    let guess = bits(n) - bits(d);
    if pow2(guess) <= *x {
        guess
    } else {
        guess - 1
    }
}

/// Smallest `e` with `2^e >= x`. `x` must be positive.
pub fn ceil_log2(x: &Rational) -> i64 {
    let f = floor_log2(x);
    if pow2(f) == *x {
        f
    } else {
        f + 1
    }
}

/// `floor(log2(n))` for a positive integer.
pub fn floor_log2_int(n: &BigInt) -> i64 {
    assert!(n.sign() == Sign::Plus, "floor_log2_int of non-positive value");
    bits(n) - 1
}

/// Floor of a nonnegative rational as `usize`, saturating.
pub fn floor_usize(x: &Rational) -> usize {
    if !x.is_positive() {
        return 0;
    }
    x.floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_power_of_two(x: &Rational) -> bool {
    x.is_positive() && pow2(floor_log2(x)) == *x
}

/// Parse `"3"`, `"-2"`, `"3/4"` or `"0.125"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse("rational", format!("cannot parse {s:?} as a rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::parse("rational", format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mag: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(mag, den);
        return Ok(if negative { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Express every value over the least common denominator. Returns the scaled
/// numerators and the common denominator.
pub fn common_scale(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    (scaled, den)
}

/// Scale to a common denominator and narrow to `i128` when the sum of
/// absolute values fits comfortably; `None` means callers must stay on
/// arbitrary precision.
pub fn common_scale_i128(values: &[Rational]) -> Option<(Vec<i128>, BigInt)> {
    let (scaled, den) = common_scale(values);
    let total: BigInt = scaled.iter().map(|v| v.abs()).sum();
    if total.bits() > 120 {
        return None;
    }
    let narrow = scaled.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>()?;
    Some((narrow, den))
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

/// Serde adapter writing rationals as `"p/q"` (or `"p"`) strings.
pub mod as_string {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }

    pub mod option {
        use super::Rational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }
    }
}
