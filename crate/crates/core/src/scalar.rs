//! Exact scalars in `Q` or a single quadratic extension `Q(sqrt d)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("field mismatch: cannot combine elements of Q(sqrt {left}) and Q(sqrt {right})")]
pub struct FieldMismatch {
    pub left: u64,
    pub right: u64,
}

/// `a + b*sqrt(d)` with `d` squarefree.
///
/// Normal form: whenever `b == 0` the discriminant is reset to `0`, so a
/// rational value has exactly one representation and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Splits `k = s^2 * d` with `d` squarefree.
pub fn squarefree_split(k: u64) -> (u64, u64) {
    if k == 0 {
        return (0, 0);
    }
    let mut rest = k;
    let mut square_root = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        square_root *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= rest;
    (square_root, d)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    /// Builds `a + b*sqrt(k)` for an arbitrary nonnegative `k`, pulling square
    /// factors out of the radicand.
    pub fn new(a: BigRational, b: BigRational, k: u64) -> Self {
        let (s, d) = squarefree_split(k);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if d <= 1 {
            // sqrt(1) folds into the rational part, sqrt(0) vanishes.
            let a = if d == 1 { a + b } else { a };
            return Self::rational(a);
        }
        let mut out = Scalar { a, b, d };
        out.normalize();
        out
    }

    /// `sqrt(k)` as an exact scalar.
    pub fn sqrt_of(k: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), k)
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = 0;
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Squarefree discriminant, `0` for rational values.
    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.d == 0 && self.a.is_one()
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    fn common_field(&self, other: &Self) -> Result<u64, FieldMismatch> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (l, r) if l == r => Ok(l),
            (l, r) => Err(FieldMismatch { left: l, right: r }),
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.common_field(other).is_ok()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldMismatch> {
        let d = self.common_field(other)?;
        let mut out = Scalar {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        };
        out.normalize();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldMismatch> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldMismatch> {
        let d = self.common_field(other)?;
        if self.d == 0 && other.d == 0 {
            return Ok(Self::rational(&self.a * &other.a));
        }
        let radicand = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * radicand;
        let b = &self.a * &other.b + &self.b * &other.a;
        let mut out = Scalar { a, b, d };
        out.normalize();
        Ok(out)
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        let mut out = Scalar {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        };
        out.normalize();
        out
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> BigRational {
        let radicand = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * radicand
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm();
        // squarefree d > 1 is never a rational square, so the norm is nonzero
        debug_assert!(!norm.is_zero());
        let mut out = Scalar {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            d: self.d,
        };
        out.normalize();
        Some(out)
    }

    /// Small integer value, if this is one.
    pub fn to_i64(&self) -> Option<i64> {
        if self.d == 0 && self.a.is_integer() {
            self.a.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn is_negative_leading(&self) -> bool {
        if self.a.is_zero() {
            self.b.is_negative()
        } else {
            self.a.is_negative()
        }
    }

    /// Multiplies through by the lcm of all denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::rational(v)
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return fmt_rational(&self.a, f);
        }
        if !self.a.is_zero() {
            fmt_rational(&self.a, f)?;
            write!(f, "{}", if self.b.is_negative() { " - " } else { " + " })?;
        } else if self.b.is_negative() {
            write!(f, "-")?;
        }
        let b = self.b.abs();
        if !b.is_one() {
            fmt_rational(&b, f)?;
            write!(f, "*")?;
        }
        write!(f, "s{}", self.d)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

// Operator impls panic on a field mismatch; callers that can see mixed
// fields go through the checked_* methods.
impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(4), (2, 1));
        assert_eq!(squarefree_split(7), (1, 7));
        assert_eq!(squarefree_split(1), (1, 1));
    }

    #[test]
    fn perfect_square_degrades_to_rational() {
        let two = Scalar::sqrt_of(4);
        assert!(two.is_rational());
        assert_eq!(two, Scalar::from_int(2));
        assert_eq!(Scalar::sqrt_of(1), Scalar::one());
        let s8 = Scalar::sqrt_of(8);
        assert_eq!(s8.discriminant(), 2);
        assert_eq!(s8, &Scalar::from_int(2) * &Scalar::sqrt_of(2));
    }

    #[test]
    fn sqrt_squares_back() {
        for k in [2u64, 3, 5, 6, 12] {
            let s = Scalar::sqrt_of(k);
            assert_eq!(&s * &s, Scalar::from_int(k as i64));
        }
    }

    #[test]
    fn norm_identity() {
        let x = Scalar::new(
            BigRational::from_integer(3.into()),
            BigRational::from_integer(2.into()),
            5,
        );
        assert_eq!(&x * &x.conjugate(), Scalar::rational(x.norm()));
        assert_eq!(x.norm(), BigRational::from_integer((9 - 20).into()));
    }

    #[test]
    fn mixed_fields_rejected() {
        let err = Scalar::sqrt_of(2).checked_mul(&Scalar::sqrt_of(3)).unwrap_err();
        assert_eq!(err, FieldMismatch { left: 2, right: 3 });
        assert!(Scalar::sqrt_of(2).checked_add(&Scalar::from_int(7)).is_ok());
    }

    #[test]
    fn cancellation_resets_field() {
        let s = Scalar::sqrt_of(3);
        let zero = &s - &s;
        assert!(zero.is_zero());
        assert_eq!(zero.discriminant(), 0);
        assert_eq!(zero, Scalar::zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_ratio(-1, 3).to_string(), "-1/3");
        assert_eq!(Scalar::sqrt_of(2).to_string(), "s2");
        let x = &Scalar::one() - &Scalar::sqrt_of(2);
        assert_eq!(x.to_string(), "1 - s2");
    }
}
