//! Exact arithmetic in the biquadratic field Q(sqrt n, sqrt m).
//!
//! A [`Scalar`] is stored on the basis `1, sqrt(u), sqrt(v), sqrt(uv)` where
//! `u`, `v` are the squarefree parts of `n`, `m`. When the basis degenerates
//! (`u = 1`, `v = 1` or `u = v`) the redundant coordinates are folded at
//! construction time, so equal values always have identical coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Splits `k` as `s^2 * r` with `r` squarefree, returning `(s, r)`.
pub fn squarefree_split(mut k: u64) -> (u64, u64) {
    let (mut s, mut r) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= k {
        let mut e = 0;
        while k.is_multiple_of(p) {
            k /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    (s, r * k)
}

/// The field context: the parameters `n`, `m` and their squarefree parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    n: u64,
    m: u64,
    u: u64,
    v: u64,
}

impl QuadField {
    pub fn new(n: u64, m: u64) -> Self {
        assert!(n >= 1 && m >= 1, "field parameters must be positive");
        QuadField { n, m, u: squarefree_split(n).1, v: squarefree_split(m).1 }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Squarefree radicands `(u, v)` of the basis elements `sqrt(u)`, `sqrt(v)`.
    pub fn radicands(&self) -> (u64, u64) {
        (self.u, self.v)
    }

    /// Which basis coordinates can be nonzero in canonical form.
    fn live(&self) -> [bool; 4] {
        let su = self.u != 1;
        let sv = self.v != 1 && self.v != self.u;
        [true, su, sv, su && sv]
    }

    /// Integer radicand rendered for each basis slot.
    fn radicand(&self, slot: usize) -> u64 {
        match slot {
            1 => self.u,
            2 => self.v,
            3 => self.u * self.v,
            _ => 1,
        }
    }

    fn ensure_same(&self, other: &QuadField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("n={}, m={}", self.n, self.m), format!("n={}, m={}", other.n, other.m)))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: QuadField,
    c: [BigRational; 4],
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl Scalar {
    pub fn zero(field: QuadField) -> Self {
        Scalar { field, c: [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    pub fn one(field: QuadField) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: QuadField, x: i64) -> Self {
        Self::from_rational(field, rat(x))
    }

    pub fn from_rational(field: QuadField, r: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.c[0] = r;
        s
    }

    pub fn from_ratio(field: QuadField, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(field, BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// Builds `a + b sqrt(u) + c sqrt(v) + d sqrt(uv)` and canonicalizes.
    pub fn from_coords(field: QuadField, coords: [BigRational; 4]) -> Self {
        let mut s = Scalar { field, c: coords };
        s.fold();
        s
    }

    /// `sqrt(k)` as an element of the field.
    pub fn sqrt(field: QuadField, k: u64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero(field));
        }
        let (s, r) = squarefree_split(k);
        let mut out = Self::zero(field);
        let (u, v) = (field.u, field.v);
        let (g_uv, uv_sqf) = squarefree_split(u * v);
        if r == 1 {
            out.c[0] = big(s);
        } else if r == u {
            out.c[1] = big(s);
        } else if r == v {
            out.c[2] = big(s);
        } else if r == uv_sqf {
            // sqrt(uv) = g_uv * sqrt(r)
            out.c[3] = BigRational::new(BigInt::from(s), BigInt::from(g_uv));
        } else {
            return Err(Error::RadicandNotInField(k));
        }
        out.fold();
        Ok(out)
    }

    /// `1 / sqrt(k)`.
    pub fn inv_sqrt(field: QuadField, k: u64) -> Result<Self> {
        Self::sqrt(field, k)?.inv()
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn fold(&mut self) {
        let (u, v) = (self.field.u, self.field.v);
        if u == 1 {
            let b = std::mem::take(&mut self.c[1]);
            let d = std::mem::take(&mut self.c[3]);
            self.c[0] += b;
            self.c[2] += d;
        }
        if v == 1 {
            let c = std::mem::take(&mut self.c[2]);
            let d = std::mem::take(&mut self.c[3]);
            self.c[0] += c;
            self.c[1] += d;
        }
        if u == v && u != 1 {
            let c = std::mem::take(&mut self.c[2]);
            let d = std::mem::take(&mut self.c[3]);
            self.c[1] += c;
            self.c[0] += d * big(u);
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.field.ensure_same(&other.field)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.field.ensure_same(&other.field)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.field.ensure_same(&other.field)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let c = [&self.c[0] + &other.c[0], &self.c[1] + &other.c[1], &self.c[2] + &other.c[2], &self.c[3] + &other.c[3]];
        Scalar { field: self.field, c }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let (u, v) = (big(self.field.u), big(self.field.v));
        let [a, b, c, d] = &self.c;
        let [a2, b2, c2, d2] = &other.c;
        // Fast path: both rational.
        if b.is_zero() && c.is_zero() && d.is_zero() && b2.is_zero() && c2.is_zero() && d2.is_zero() {
            return Scalar::from_rational(self.field, a * a2);
        }
        let raw = [
            a * a2 + &u * (b * b2) + &v * (c * c2) + &u * &v * (d * d2),
            a * b2 + b * a2 + &v * (c * d2 + d * c2),
            a * c2 + c * a2 + &u * (b * d2 + d * b2),
            a * d2 + d * a2 + b * c2 + c * b2,
        ];
        Scalar::from_coords(self.field, raw)
    }

    fn conj_u(&self) -> Scalar {
        let mut s = self.clone();
        s.c[1] = -std::mem::take(&mut s.c[1]);
        s.c[3] = -std::mem::take(&mut s.c[3]);
        s
    }

    fn conj_v(&self) -> Scalar {
        let mut s = self.clone();
        s.c[2] = -std::mem::take(&mut s.c[2]);
        s.c[3] = -std::mem::take(&mut s.c[3]);
        s
    }

    /// Multiplicative inverse via the two Galois conjugations.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let cu = self.conj_u();
        let y = self.mul_unchecked(&cu);
        let yv = y.conj_v();
        let norm = y.mul_unchecked(&yv);
        let n = norm.as_rational().cloned().ok_or(Error::DivisionByZero)?;
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let numer = cu.mul_unchecked(&yv);
        Ok(numer.scale_rational(&n.recip()))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Scalar {
        Scalar { field: self.field, c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    /// Nonzero coordinates paired with the integer radicand of their basis
    /// element (1 for the rational part).
    pub fn radical_parts(&self) -> impl Iterator<Item = (&BigRational, u64)> + '_ {
        (0..4).filter(move |&i| !self.c[i].is_zero()).map(move |i| (&self.c[i], self.field.radicand(i)))
    }

    /// True when the value is a rational number `>= 0`.
    pub fn is_nonnegative_rational(&self) -> bool {
        self.as_rational().is_some_and(|r| !r.is_negative())
    }

    #[allow(dead_code)]
    pub(crate) fn check_canonical(&self) -> bool {
        let live = self.field.live();
        (0..4).all(|i| live[i] || self.c[i].is_zero())
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Renders as `a + b*sqrt(u) + c*sqrt(v) + d*sqrt(uv)`, omitting zero parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (coef, radicand) in self.radical_parts() {
            let neg = coef.is_negative();
            let mag = coef.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if radicand == 1 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({radicand})")?;
            } else {
                write!(f, "{}*sqrt({radicand})", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on a field mismatch; use [`Scalar::try_add`] to get an error.
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]] }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64, m: u64) -> QuadField {
        QuadField::new(n, m)
    }

    #[test]
    fn halves_sum_to_one() {
        let k = f(2, 3);
        let half = Scalar::from_ratio(k, 1, 2).unwrap();
        assert_eq!(&half + &half, Scalar::one(k));
    }

    #[test]
    fn two_inverse_roots_make_a_root() {
        let k = f(2, 2);
        let x = Scalar::inv_sqrt(k, 2).unwrap();
        assert_eq!(&x + &x, Scalar::sqrt(k, 2).unwrap());
    }

    #[test]
    fn additive_identity() {
        let k = f(2, 3);
        let x = Scalar::sqrt(k, 6).unwrap();
        assert_eq!(&x + &Scalar::zero(k), x);
    }

    #[test]
    fn inverse_root_squared() {
        for (n, m) in [(2, 3), (3, 2), (4, 2), (5, 5), (1, 1)] {
            let k = f(n, m);
            let x = Scalar::inv_sqrt(k, n).unwrap();
            assert_eq!(&x * &x, Scalar::from_ratio(k, 1, n as i64).unwrap());
        }
    }

    #[test]
    fn mixed_product_is_sqrt_nm_coordinate() {
        let k = f(2, 3);
        let x = Scalar::inv_sqrt(k, 2).unwrap();
        let y = Scalar::inv_sqrt(k, 3).unwrap();
        let z = &x * &y;
        let expect = BigRational::new(BigInt::from(1), BigInt::from(6));
        assert!(z.coords()[0].is_zero() && z.coords()[1].is_zero() && z.coords()[2].is_zero());
        assert_eq!(z.coords()[3], expect);
    }

    #[test]
    fn multiplicative_identity() {
        let k = f(3, 5);
        let x = &Scalar::sqrt(k, 15).unwrap() + &Scalar::from_int(k, 7);
        assert_eq!(&x * &Scalar::one(k), x);
    }

    #[test]
    fn inverse_examples() {
        let k = f(2, 3);
        let r2 = Scalar::sqrt(k, 2).unwrap();
        let inv = r2.inv().unwrap();
        assert_eq!(inv, Scalar::from_ratio(k, 1, 2).unwrap().try_mul(&r2).unwrap());
        assert_eq!(Scalar::one(k).inv().unwrap(), Scalar::one(k));
        let two_plus = &Scalar::from_int(k, 2) + &r2;
        let expect = (&Scalar::from_int(k, 2) - &r2).try_mul(&Scalar::from_ratio(k, 1, 2).unwrap()).unwrap();
        assert_eq!(two_plus.inv().unwrap(), expect);
        assert_eq!(Scalar::zero(k).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn degenerate_fields_fold() {
        // n = 4: sqrt(n) is rational
        let k = f(4, 2);
        assert_eq!(Scalar::sqrt(k, 4).unwrap(), Scalar::from_int(k, 2));
        // u = v: sqrt(nm) = 2 when n = m = 2
        let k = f(2, 2);
        assert_eq!(Scalar::sqrt(k, 4).unwrap(), Scalar::from_int(k, 2));
        let r = Scalar::sqrt(k, 2).unwrap();
        assert_eq!(&r * &r, Scalar::from_int(k, 2));
        assert!(r.check_canonical());
        // n = 8, m = 2 share the radicand 2
        let k = f(8, 2);
        assert_eq!(Scalar::sqrt(k, 8).unwrap(), &Scalar::sqrt(k, 2).unwrap() + &Scalar::sqrt(k, 2).unwrap());
    }

    #[test]
    fn sqrt_of_uv_with_common_factor() {
        // u = 2, v = 6: sqrt(12) = 2 sqrt(3)
        let k = f(2, 6);
        let s3 = Scalar::sqrt(k, 3).unwrap();
        assert_eq!(&s3 * &s3, Scalar::from_int(k, 3));
        assert_eq!(&Scalar::sqrt(k, 2).unwrap() * &Scalar::sqrt(k, 6).unwrap(), &s3 + &s3);
        assert!(Scalar::sqrt(k, 5).is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Scalar::one(f(2, 3));
        let b = Scalar::one(f(3, 2));
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch(..))));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn display_forms() {
        let k = f(2, 3);
        let x = &(&Scalar::from_ratio(k, 1, 2).unwrap() - &Scalar::sqrt(k, 2).unwrap())
            + &Scalar::from_ratio(k, 3, 4).unwrap().try_mul(&Scalar::sqrt(k, 6).unwrap()).unwrap();
        assert_eq!(x.to_string(), "1/2 - sqrt(2) + 3/4*sqrt(6)");
        assert_eq!(Scalar::zero(k).to_string(), "0");
    }
}
