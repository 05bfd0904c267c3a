//! Helpers around [`Rational`], the exact base field.

use num_bigint::BigInt;
use num_traits::Signed;

/// Exact arbitrary-precision rational number, always kept in lowest terms
/// with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Height of a rational: `max(|numerator|, denominator)`.
pub fn height(r: &Rational) -> BigInt {
    let n = r.numer().abs();
    let d = r.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// Exact square root in the rationals, if any.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(r.numer())?;
    let d = integer_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Sort key putting integers in the order 0, 1, -1, 2, -2, ...
pub fn signed_rank(v: i64) -> u64 {
    match v {
        0 => 0,
        v if v > 0 => 2 * v as u64 - 1,
        v => 2 * v.unsigned_abs(),
    }
}
