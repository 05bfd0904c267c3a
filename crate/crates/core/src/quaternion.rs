//! Generalized quaternion algebras `(a,b/Q)` with presentation
//! `i^2 = a`, `j^2 = b`, `k = ij = -ji`, `k^2 = -ab`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hilbert::{self, Place};
use crate::ratmat::RatMatrix;
use crate::rational::{self, Rational};

/// The structure constants `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    pub a: Rational,
    pub b: Rational,
}

/// Shared handle on a division quaternion algebra over the rationals.
#[derive(Debug, Clone)]
pub struct Algebra(Arc<AlgebraParams>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Algebra {}

impl Default for Algebra {
    fn default() -> Self {
        Self::hamilton()
    }
}

impl Algebra {
    /// Builds `(a,b/Q)`, rejecting zero parameters and split algebras.
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroParameter);
        }
        if !hilbert::is_division(&a, &b)? {
            return Err(Error::NotDivision {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(Self(Arc::new(AlgebraParams { a, b })))
    }

    /// Hamilton's quaternions over the rationals, `(-1,-1/Q)`.
    pub fn hamilton() -> Self {
        Self(Arc::new(AlgebraParams {
            a: rational::int(-1),
            b: rational::int(-1),
        }))
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.0
    }

    pub fn a(&self) -> &Rational {
        &self.0.a
    }

    pub fn b(&self) -> &Rational {
        &self.0.b
    }

    pub fn ramified_places(&self) -> Result<Vec<Place>> {
        hilbert::ramified_places(self.a(), self.b())
    }

    pub fn quaternion(&self, coords: [Rational; 4]) -> Quaternion {
        Quaternion {
            alg: self.clone(),
            c: coords,
        }
    }

    pub fn from_ints(&self, c: [i64; 4]) -> Quaternion {
        self.quaternion(c.map(rational::int))
    }

    pub fn scalar(&self, r: Rational) -> Quaternion {
        self.quaternion([r, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn zero(&self) -> Quaternion {
        self.scalar(Rational::zero())
    }

    pub fn one(&self) -> Quaternion {
        self.scalar(Rational::one())
    }

    pub fn i(&self) -> Quaternion {
        self.from_ints([0, 1, 0, 0])
    }

    pub fn j(&self) -> Quaternion {
        self.from_ints([0, 0, 1, 0])
    }

    pub fn k(&self) -> Quaternion {
        self.from_ints([0, 0, 0, 1])
    }

    /// `sum p * q` over the pairs, reduced once per coordinate at the end.
    pub fn sum_of_products<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a Quaternion, &'a Quaternion)>,
    ) -> Quaternion {
        let (a, b) = (&self.0.a, &self.0.b);
        // all structure constants scaled by denom(a) * denom(b)
        let e = a.denom() * b.denom();
        let ka = a.numer() * b.denom();
        let kb = b.numer() * a.denom();
        let kab = a.numer() * b.numer();
        let mut acc: [BigInt; 4] = Default::default();
        let mut den = BigInt::one();
        let mut any = false;
        for (p, q) in pairs {
            if p.is_zero() || q.is_zero() {
                continue;
            }
            let ([w1, x1, y1, z1], d1) = p.integral();
            let ([w2, x2, y2, z2], d2) = q.integral();
            let terms = [
                &e * (&w1 * &w2) + &ka * (&x1 * &x2) + &kb * (&y1 * &y2) - &kab * (&z1 * &z2),
                &e * (&w1 * &x2 + &x1 * &w2) - &kb * (&y1 * &z2 - &z1 * &y2),
                &e * (&w1 * &y2 + &y1 * &w2) + &ka * (&x1 * &z2 - &z1 * &x2),
                &e * (&w1 * &z2 + &z1 * &w2 + &x1 * &y2 - &y1 * &x2),
            ];
            let d = d1 * d2 * &e;
            if !any {
                acc = terms;
                den = d;
                any = true;
            } else if d == den {
                for (s, t) in acc.iter_mut().zip(terms) {
                    *s += t;
                }
            } else {
                for (s, t) in acc.iter_mut().zip(terms) {
                    *s = &*s * &d + t * &den;
                }
                den *= d;
            }
        }
        if !any {
            return self.zero();
        }
        self.quaternion(acc.map(|n| Rational::new(n, den.clone())))
    }

    /// The basis `(1, i, j, k)`.
    pub fn basis(&self) -> [Quaternion; 4] {
        [self.one(), self.i(), self.j(), self.k()]
    }
}

/// An element `w + x i + y j + z k` of a quaternion algebra.
#[derive(Debug, Clone)]
pub struct Quaternion {
    alg: Algebra,
    c: [Rational; 4],
}

impl PartialEq for Quaternion {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.alg == other.alg
    }
}

impl Eq for Quaternion {}

impl Hash for Quaternion {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Quaternion {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn w(&self) -> &Rational {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.is_central()
    }

    /// Central elements are exactly the rational multiples of 1.
    pub fn is_central(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value of a central element.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_central().then_some(&self.c[0])
    }

    fn check(&self, other: &Quaternion) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_mul(&self, other: &Quaternion) -> Result<Quaternion> {
        self.check(other)?;
        Ok(self.alg.sum_of_products([(self, other)]))
    }

    /// Coordinates as integers over one common denominator.
    fn integral(&self) -> ([BigInt; 4], BigInt) {
        let mut d = self.c[0].denom().clone();
        for r in &self.c[1..] {
            let rd = r.denom();
            if rd != &d && !(&d % rd).is_zero() {
                d = d.lcm(rd);
            }
        }
        let nums = [0, 1, 2, 3].map(|n| {
            let r = &self.c[n];
            if r.denom() == &d {
                r.numer().clone()
            } else {
                r.numer() * (&d / r.denom())
            }
        });
        (nums, d)
    }

    pub fn try_add(&self, other: &Quaternion) -> Result<Quaternion> {
        self.check(other)?;
        Ok(self.zip(other, |p, q| p + q))
    }

    pub fn try_sub(&self, other: &Quaternion) -> Result<Quaternion> {
        self.check(other)?;
        Ok(self.zip(other, |p, q| p - q))
    }

    fn zip(&self, other: &Quaternion, f: impl Fn(&Rational, &Rational) -> Rational) -> Quaternion {
        let c = [0, 1, 2, 3].map(|n| f(&self.c[n], &other.c[n]));
        self.alg.quaternion(c)
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, r: &Rational) -> Quaternion {
        self.alg.quaternion(self.c.clone().map(|x| x * r))
    }

    pub fn conj(&self) -> Quaternion {
        let [w, x, y, z] = &self.c;
        self.alg.quaternion([w.clone(), -x, -y, -z])
    }

    /// Reduced norm `q * conj(q)`.
    pub fn norm(&self) -> Rational {
        let (a, b) = (self.alg.a(), self.alg.b());
        let [w, x, y, z] = &self.c;
        w * w - a * x * x - b * y * y + a * b * z * z
    }

    /// Reduced trace `q + conj(q)`.
    pub fn trace(&self) -> Rational {
        &self.c[0] + &self.c[0]
    }

    pub fn pure_part(&self) -> Quaternion {
        let [_, x, y, z] = &self.c;
        self.alg
            .quaternion([Rational::zero(), x.clone(), y.clone(), z.clone()])
    }

    pub fn inv(&self) -> Result<Quaternion> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn square(&self) -> Quaternion {
        self * self
    }

    /// Conjugate `g q g^-1`.
    pub fn conjugated_by(&self, g: &Quaternion) -> Result<Quaternion> {
        Ok(&(g * self) * &g.inv()?)
    }

    /// Lie commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Quaternion) -> Quaternion {
        &(self * other) - &(other * self)
    }

    /// Largest height of a coordinate.
    pub fn height(&self) -> BigInt {
        self.c.iter().map(rational::height).max().unwrap()
    }

    /// Matrix of `c -> self * c` on coordinates.
    pub fn left_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(
            &self
                .alg
                .basis()
                .iter()
                .map(|e| (self * e).c.to_vec())
                .collect::<Vec<_>>(),
        )
    }

    /// Matrix of `c -> c * self` on coordinates.
    pub fn right_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(
            &self
                .alg
                .basis()
                .iter()
                .map(|e| (e * self).c.to_vec())
                .collect::<Vec<_>>(),
        )
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Quaternion> for &Quaternion {
            type Output = Quaternion;
            /// Panics if the operands live in different algebras.
            fn $m(self, rhs: &Quaternion) -> Quaternion {
                self.$try(rhs).expect("quaternion algebra mismatch")
            }
        }
        impl $tr<Quaternion> for Quaternion {
            type Output = Quaternion;
            fn $m(self, rhs: Quaternion) -> Quaternion {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Quaternion> for Quaternion {
            type Output = Quaternion;
            fn $m(self, rhs: &Quaternion) -> Quaternion {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&Quaternion> for Quaternion {
    fn add_assign(&mut self, rhs: &Quaternion) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Quaternion> for Quaternion {
    fn sub_assign(&mut self, rhs: &Quaternion) {
        *self = &*self - rhs;
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.alg.quaternion(self.c.clone().map(|x| -x))
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, unit) in self.c.iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if unit.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{mag}{unit}")?;
            }
        }
        Ok(())
    }
}

/// Product under the fixed presentation; errors on mismatched algebras.
pub fn q_mul(p: &Quaternion, q: &Quaternion) -> Result<Quaternion> {
    p.try_mul(q)
}

pub fn q_conj(q: &Quaternion) -> Quaternion {
    q.conj()
}

pub fn q_norm(q: &Quaternion) -> Rational {
    q.norm()
}

pub fn q_trace(q: &Quaternion) -> Rational {
    q.trace()
}

pub fn q_inv(q: &Quaternion) -> Result<Quaternion> {
    q.inv()
}

/// Whether `q^2 = t(q) q - N(q)`.
pub fn quadratic_identity_check(q: &Quaternion) -> bool {
    let rhs = &q.scale(&q.trace()) - &q.algebra().scalar(q.norm());
    q.square() == rhs
}

/// Polar form of the norm, `t(p * conj(q))`.
pub fn polar_form(p: &Quaternion, q: &Quaternion) -> Result<Rational> {
    Ok(p.try_mul(&q.conj())?.trace())
}
