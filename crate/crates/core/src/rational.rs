//! Exact rational scalars and grid helpers.
//!
//! Every coordinate, value and slope in the crate is a [`Rational`]: an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. There is no floating point in any computation; decimals only
//! appear when rendering plots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseRationalError;

pub type Rational = BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `i / n` as a rational.
pub fn grid(i: usize, n: usize) -> Rational {
    Rational::new(BigInt::from(i), BigInt::from(n))
}

/// Parses `"p/q"` or `"n"`. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let bad = || ParseRationalError::Malformed(s.to_string());
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let parse_int = |part: &str| -> Result<BigInt, ParseRationalError> {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        part.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical string form: `"n"` for integers, otherwise `"p/q"`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Display adapter so rationals print in the same `p/q` form everywhere.
pub struct Show<'a>(pub &'a Rational);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// Fractional part `{x}` in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `{x}_{1/p}`: the unique `y` in `[0, 1/p)` congruent to `x` modulo `1/p`.
pub fn frac_part(x: &Rational, p: usize) -> Rational {
    let scaled = x * BigInt::from(p);
    frac(&scaled) / BigInt::from(p)
}

/// Largest element of `(1/p)Z` that is `<= x`.
pub fn floor_grid(x: &Rational, p: usize) -> Rational {
    x - frac_part(x, p)
}

/// Smallest element of `(1/p)Z` that is `>= x`.
pub fn ceil_grid(x: &Rational, p: usize) -> Rational {
    let scaled = x * BigInt::from(p);
    scaled.ceil() / BigInt::from(p)
}

/// True when `x` lies in `(1/n)Z`.
pub fn on_grid(x: &Rational, n: usize) -> bool {
    (x * BigInt::from(n)).is_integer()
}

/// Least common multiple of the denominators of `xs`, as a machine integer.
///
/// Returns `None` if it does not fit in `usize`.
pub fn lcm_denominators<'a, I>(xs: I) -> Option<usize>
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut acc = BigInt::one();
    for x in xs {
        acc = acc.lcm(x.denom());
    }
    acc.to_usize()
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

/// `1/2` appears in every case split of the fill-in.
pub fn half() -> Rational {
    rat(1, 2)
}

/// Exact ceiling of a rational as a non-negative machine integer.
pub(crate) fn ceil_usize(x: &Rational) -> Option<usize> {
    if x.is_negative() {
        return Some(0);
    }
    x.ceil().to_integer().to_usize()
}
