//! Local Hilbert symbols over the rationals.
//!
//! The quaternion algebra `(a,b/Q)` is a division algebra iff its norm form
//! is anisotropic, iff `(a,b)_v = -1` at some place `v`. Only the real place,
//! the prime 2 and the odd primes dividing `a` or `b` can ramify.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// A place of the rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Prime factorisation of `|n|` by trial division.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return Ok(out);
    }
    let mut d = BigInt::from(2u32);
    let mut step = 0u64;
    while &d * &d <= n {
        if step > TRIAL_DIVISION_LIMIT {
            return Err(Error::ParameterTooLarge(n.to_string()));
        }
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
        step += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    Ok(out)
}

/// Squarefree integer in the same square class as `r` (sign preserved).
pub fn squarefree_class(r: &Rational) -> Result<BigInt> {
    if r.is_zero() {
        return Err(Error::ZeroParameter);
    }
    // p/q and p*q differ by the square q^2
    let m = r.numer() * r.denom();
    let mut out = if m.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor(&m)? {
        if e % 2 == 1 {
            out *= p;
        }
    }
    Ok(out)
}

fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Legendre symbol `(u/p)` for an odd prime `p` not dividing `u`.
fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let e = (p - 1u32) / 2u32;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u8 {
    u.mod_floor(&BigInt::from(8u32)).to_u8().unwrap()
}

/// Hilbert symbol `(a,b)_v` of two nonzero integers.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "hilbert symbol of zero");
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if *p == BigInt::from(2u32) => {
            let (alpha, u) = valuation(a, p);
            let (beta, v) = valuation(b, p);
            let eps = |x: u8| ((x - 1) / 2) % 2;
            let omega = |x: u8| ((x as u32 * x as u32 - 1) / 8 % 2) as u8;
            let (u, v) = (mod8(&u), mod8(&v));
            let e = eps(u) * eps(v) + (alpha % 2) as u8 * omega(v) + (beta % 2) as u8 * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = valuation(a, p);
            let (beta, v) = valuation(b, p);
            let mut s: i8 = 1;
            let eps_p = ((p - 1u32) / 2u32).is_odd();
            if alpha % 2 == 1 && beta % 2 == 1 && eps_p {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// Places at which `(a,b)_v` could be `-1`, with their symbols.
pub fn local_symbols(a: &Rational, b: &Rational) -> Result<Vec<(Place, i8)>> {
    let sa = squarefree_class(a)?;
    let sb = squarefree_class(b)?;
    let mut places = vec![Place::Infinity, Place::Prime(BigInt::from(2u32))];
    for (p, _) in factor(&sa)?.into_iter().chain(factor(&sb)?) {
        let pl = Place::Prime(p);
        if !places.contains(&pl) {
            places.push(pl);
        }
    }
    places.sort();
    Ok(places
        .into_iter()
        .map(|pl| {
            let s = hilbert_symbol(&sa, &sb, &pl);
            (pl, s)
        })
        .collect())
}

/// Places where `(a,b/Q)` ramifies.
pub fn ramified_places(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    Ok(local_symbols(a, b)?
        .into_iter()
        .filter(|(_, s)| *s == -1)
        .map(|(p, _)| p)
        .collect())
}

/// Whether `(a,b/Q)` is a division algebra.
pub fn is_division(a: &Rational, b: &Rational) -> Result<bool> {
    Ok(!ramified_places(a, b)?.is_empty())
}

/// Whether the nonzero rational `e` is a square in the completion at `place`.
pub fn is_local_square(e: &Rational, place: &Place) -> bool {
    assert!(!e.is_zero());
    let m = e.numer() * e.denom();
    match place {
        Place::Infinity => m.is_positive(),
        Place::Prime(p) => {
            let (v, u) = valuation(&m, p);
            if v % 2 == 1 {
                return false;
            }
            if *p == BigInt::from(2u32) {
                mod8(&u) == 1
            } else {
                legendre(&u, p) == 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn isotropic_by_search(a: i64, b: i64, bound: i64) -> bool {
        // w^2 - a x^2 - b y^2 + ab z^2 = 0 with a nonzero integer point
        for w in -bound..=bound {
            for x in -bound..=bound {
                for y in -bound..=bound {
                    for z in -bound..=bound {
                        if (w, x, y, z) == (0, 0, 0, 0) {
                            continue;
                        }
                        if w * w - a * x * x - b * y * y + a * b * z * z == 0 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn hamilton_is_division() {
        assert!(is_division(&int(-1), &int(-1)).unwrap());
        assert_eq!(
            ramified_places(&int(-1), &int(-1)).unwrap(),
            vec![Place::Infinity, Place::Prime(BigInt::from(2))]
        );
    }

    #[test]
    fn split_examples() {
        for b in [-7, -1, 1, 2, 3, 5] {
            assert!(!is_division(&int(1), &int(b)).unwrap());
        }
        assert!(!is_division(&int(-1), &int(2)).unwrap());
        assert!(isotropic_by_search(-1, 2, 2));
    }

    #[test]
    fn rational_parameters_use_square_class() {
        assert!(is_division(&frac(-1, 4), &frac(-9, 1)).unwrap());
        assert!(!is_division(&frac(1, 4), &frac(-3, 7)).unwrap());
    }

    #[test]
    fn ramification_count_is_even() {
        for a in -15i64..=15 {
            for b in -15i64..=15 {
                if a == 0 || b == 0 {
                    continue;
                }
                let n = ramified_places(&int(a), &int(b)).unwrap().len();
                assert_eq!(n % 2, 0, "({a},{b})");
            }
        }
    }

    #[test]
    fn split_verdicts_agree_with_isotropy_search() {
        // a found isotropic vector proves the algebra is split
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                if a == 0 || b == 0 {
                    continue;
                }
                if isotropic_by_search(a, b, 4) {
                    assert!(!is_division(&int(a), &int(b)).unwrap(), "({a},{b})");
                }
            }
        }
    }

    #[test]
    fn known_division_algebras() {
        for (a, b) in [(-1, -3), (-2, -5), (-1, 3), (3, 5), (2, 5), (-1, 7)] {
            assert!(is_division(&int(a), &int(b)).unwrap(), "({a},{b})");
        }
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&int(17), &Place::Prime(BigInt::from(2))));
        assert!(!is_local_square(&int(3), &Place::Prime(BigInt::from(2))));
        assert!(is_local_square(&int(2), &Place::Prime(BigInt::from(7))));
        assert!(!is_local_square(&int(3), &Place::Prime(BigInt::from(7))));
        assert!(!is_local_square(&int(-1), &Place::Infinity));
        assert!(is_local_square(&frac(9, 7), &Place::Prime(BigInt::from(3))) == is_local_square(&int(7), &Place::Prime(BigInt::from(3))));
    }
}
