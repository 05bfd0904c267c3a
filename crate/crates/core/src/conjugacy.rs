//! Conjugacy classes, conjugators, Sylvester equations and square roots of
//! pure quaternions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hilbert;
use crate::quaternion::{polar_form, Algebra, Quaternion};
use crate::rational::{self, Rational};
use crate::search::height_ordered_with_zero;

/// Conjugacy class `{g q g^-1}` of a quaternion.
///
/// Noncentral classes are determined by `(trace, norm)`; central classes
/// are singletons.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub trace: Rational,
    pub norm: Rational,
    pub central: bool,
    pub representative: Quaternion,
}

impl ConjClass {
    pub fn of(q: &Quaternion) -> Self {
        Self {
            trace: q.trace(),
            norm: q.norm(),
            central: q.is_central(),
            representative: q.clone(),
        }
    }

    /// Whether the class is `{0}`.
    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn contains(&self, q: &Quaternion) -> bool {
        *self == ConjClass::of(q)
    }
}

impl PartialEq for ConjClass {
    fn eq(&self, other: &Self) -> bool {
        match (self.central, other.central) {
            (true, true) => self.representative == other.representative,
            (false, false) => self.trace == other.trace && self.norm == other.norm,
            _ => false,
        }
    }
}

impl Eq for ConjClass {}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[t={},N={}] rep={}", self.trace, self.norm, self.representative)
    }
}

fn same_algebra(p: &Quaternion, q: &Quaternion) -> Result<()> {
    if p.algebra() == q.algebra() {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

pub fn are_conjugate(p: &Quaternion, q: &Quaternion) -> Result<bool> {
    same_algebra(p, q)?;
    Ok(if p.is_central() || q.is_central() {
        p == q
    } else {
        p.trace() == q.trace() && p.norm() == q.norm()
    })
}

/// Nonzero `g` with `g q g^-1 = p`: the first vector of the canonical
/// kernel basis of the rational system `g q - p g = 0`.
pub fn conjugator(p: &Quaternion, q: &Quaternion) -> Result<Quaternion> {
    if !are_conjugate(p, q)? {
        return Err(Error::NotConjugate);
    }
    let alg = p.algebra();
    if q.is_central() {
        return Ok(alg.one());
    }
    let sys = q.right_matrix().sub(&p.left_matrix());
    let v = sys
        .kernel()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Discrepancy("conjugate pair with trivial intertwiner space".into()))?;
    let g = alg.quaternion(v.try_into().unwrap());
    if q.conjugated_by(&g)? != *p {
        return Err(Error::Discrepancy("conjugator failed verification".into()));
    }
    Ok(g)
}

/// Particular solution `c` of `p c - c q = d`, if the system is solvable.
pub fn sylvester_solve(p: &Quaternion, q: &Quaternion, d: &Quaternion) -> Result<Option<Quaternion>> {
    same_algebra(p, q)?;
    same_algebra(p, d)?;
    let sys = p.left_matrix().sub(&q.right_matrix());
    Ok(sys
        .solve(d.coords())
        .map(|c| p.algebra().quaternion(c.try_into().unwrap())))
}

/// `r` with `p + r` conjugate to `q + r`, for `t(p) = t(q)`.
///
/// For `p != q` the point is taken on the affine hyperplane
/// `N(q) - N(p) + <q - p, r> = 0`, away from the lines `-p + Q` and `-q + Q`.
pub fn translate_conjugate(p: &Quaternion, q: &Quaternion) -> Result<Quaternion> {
    same_algebra(p, q)?;
    if p.trace() != q.trace() {
        return Err(Error::Precondition("translate_conjugate needs t(p) = t(q)".into()));
    }
    let alg = p.algebra();
    if p == q {
        return Ok(alg.zero());
    }
    let d = q - p;
    let w: Vec<Rational> = alg
        .basis()
        .iter()
        .map(|e| polar_form(&d, e))
        .collect::<Result<_>>()?;
    let rhs = p.norm() - q.norm();
    let pivot = w.iter().position(|c| !c.is_zero()).expect("polar form is nondegenerate");
    let free: Vec<usize> = (0..4).filter(|&c| c != pivot).collect();
    for vals in height_ordered_with_zero(3, 16) {
        let mut r: [Rational; 4] = Default::default();
        let mut acc = rhs.clone();
        for (&idx, &v) in free.iter().zip(&vals) {
            r[idx] = rational::int(v);
            acc -= &w[idx] * &r[idx];
        }
        r[pivot] = acc / &w[pivot];
        let r = alg.quaternion(r);
        let (pr, qr) = (p + &r, q + &r);
        if !pr.is_central() && !qr.is_central() {
            debug_assert_eq!(pr.norm(), qr.norm());
            return Ok(r);
        }
    }
    Err(Error::BudgetExhausted("translate_conjugate enumeration".into()))
}

/// Writes a pure quaternion as a Lie commutator `u v - v u`.
pub fn pure_as_commutator(p: &Quaternion) -> Result<(Quaternion, Quaternion)> {
    if !p.trace().is_zero() {
        return Err(Error::Precondition("pure_as_commutator needs t(p) = 0".into()));
    }
    let alg = p.algebra();
    if p.is_zero() {
        return Ok((alg.zero(), alg.zero()));
    }
    // p + r = g r g^-1, hence p = [g r, g^-1]
    let r = translate_conjugate(p, &alg.zero())?;
    let g = conjugator(&(p + &r), &r)?;
    let u = &g * &r;
    let v = g.inv()?;
    if u.commutator(&v) != *p {
        return Err(Error::Discrepancy("commutator recipe failed verification".into()));
    }
    Ok((u, v))
}

/// Whether some pure quaternion squares to `e`, decided by local conditions.
///
/// For `e` not a rational square, `Q(sqrt e)` embeds in the algebra iff `e`
/// is a nonsquare at every ramified place.
pub fn has_pure_sqrt(alg: &Algebra, e: &Rational) -> Result<bool> {
    if e.is_zero() {
        return Ok(true);
    }
    if rational::rational_sqrt(e).is_some() {
        return Ok(false);
    }
    Ok(alg
        .ramified_places()?
        .iter()
        .all(|v| !hilbert::is_local_square(e, v)))
}

fn to_i128(n: &BigInt) -> Option<i128> {
    n.to_i128()
}

/// Pure `s` with `s^2 = e`, or `None` when none exists.
///
/// Existence is decided first; the witness is then the least scaled triple
/// `(x i + y j + z k) / d` by height, then `z, y, x` in the order
/// `0, 1, -1, 2, ...`, then `d`.
pub fn sqrt_pure(alg: &Algebra, e: &Rational, max_height: i64) -> Result<Option<Quaternion>> {
    if e.is_zero() {
        return Ok(Some(alg.zero()));
    }
    if !has_pure_sqrt(alg, e)? {
        return Ok(None);
    }
    let (a, b) = (alg.a(), alg.b());
    let ab = a * b;
    let denom = [a, b, &ab, e]
        .iter()
        .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let scale = Rational::from_integer(denom);
    let coef = |r: &Rational| -> Option<i128> { to_i128(&(r * &scale).to_integer()) };
    let too_big = || Error::BudgetExhausted("sqrt_pure coefficients exceed the search range".into());
    let ca = coef(a).ok_or_else(too_big)?;
    let cb = coef(b).ok_or_else(too_big)?;
    let cc = coef(&-ab).ok_or_else(too_big)?;
    let ce = coef(e).ok_or_else(too_big)?;

    type Key = (i64, u64, u64, u64, i64);
    let mut best: Option<(Key, [i64; 4])> = None;
    let key = |d: i64, x: i64, y: i64, z: i64| -> Key {
        let h = d.max(x.abs()).max(y.abs()).max(z.abs());
        (h, rational::signed_rank(z), rational::signed_rank(y), rational::signed_rank(x), d)
    };
    for level in 1..=max_height {
        for d in 1..=level {
            for x in -level..=level {
                for y in -level..=level {
                    if d.max(x.abs()).max(y.abs()) != level {
                        continue;
                    }
                    let rem = (|| {
                        let (d, x, y) = (d as i128, x as i128, y as i128);
                        ce.checked_mul(d * d)?
                            .checked_sub(ca.checked_mul(x * x)?)?
                            .checked_sub(cb.checked_mul(y * y)?)
                    })()
                    .ok_or_else(too_big)?;
                    if rem % cc != 0 {
                        continue;
                    }
                    let z2 = rem / cc;
                    if z2 < 0 {
                        continue;
                    }
                    let z = z2.sqrt();
                    if z * z != z2 {
                        continue;
                    }
                    let Ok(z) = i64::try_from(z) else { continue };
                    for z in [z, -z] {
                        let k = key(d, x, y, z);
                        if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                            best = Some((k, [d, x, y, z]));
                        }
                    }
                }
            }
        }
        if best.as_ref().is_some_and(|(k, _)| k.0 <= level) {
            break;
        }
    }
    let Some((_, [d, x, y, z])) = best else {
        return Err(Error::BudgetExhausted(format!(
            "no pure square root of {e} with height <= {max_height}"
        )));
    };
    let d = rational::int(d);
    let s = alg.quaternion([
        Rational::zero(),
        rational::int(x) / &d,
        rational::int(y) / &d,
        rational::int(z) / &d,
    ]);
    if s.square() != alg.scalar(e.clone()) {
        return Err(Error::Discrepancy("sqrt_pure witness failed verification".into()));
    }
    Ok(Some(s))
}
