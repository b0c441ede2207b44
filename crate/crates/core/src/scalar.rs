//! Scalar abstraction shared by the exact and floating-point paths.
//!
//! Everything symbolic runs over [`Rational`](crate::Rational); the same code
//! instantiates over `f64`/`f32` when a floating preview is good enough.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};
use rand::Rng;

/// Coefficient field for polynomials and tensor fields.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Exact fields return `true`; identities checked over them need no tolerance.
    const EXACT: bool;
}

impl Scalar for BigRational {
    const EXACT: bool = true;
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Scalar for f32 {
    const EXACT: bool = false;
}

/// Floating types accepted at the numeric boundary.
pub trait Real: num_traits::Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl Real for f64 {}
impl Real for f32 {}

/// `n / d` as a canonical rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a plain (optionally signed) integer.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let valid_int = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) if d.bytes().all(|b| b.is_ascii_digit()) && !d.is_empty() => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Random rational in `[-1, 1]` with denominator at most `max_den`.
pub fn random_small_rational<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> BigRational {
    let d = rng.gen_range(1..=max_den);
    let n = rng.gen_range(-d..=d);
    ratio(n, d)
}

pub fn to_real<F: Real, T: ToPrimitive>(value: &T) -> F {
    value.to_f64().and_then(F::from_f64).unwrap_or_else(F::nan)
}
