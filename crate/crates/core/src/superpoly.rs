//! The supercommutative polynomial algebra `C[x_1..x_n, theta_1..theta_n]`
//! over an exact scalar field.
//!
//! Variables are addressed with 1-based indices, matching the text format
//! (`x1`, `t1`, ...). Fermions in a [`Monomial`] are kept as a bitmask, which
//! is the strictly increasing index list in disguise; every sign is produced
//! when two fermion sets are merged.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::scalar::{FieldMismatch, Scalar};

pub mod text;

pub use text::{format_poly, parse_poly};

/// Largest supported number of variable pairs.
pub const MAX_VARS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldMismatch),
    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomials over different variable counts ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{|a||b|}`
    pub fn exchange_sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// `x^alpha * theta_{i_1} ... theta_{i_t}` with `i_1 < ... < i_t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Vec<u32>,
    fermions: u32,
}

fn sign_of(transpositions: u32) -> i64 {
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variable pairs supported");
        Monomial {
            alpha: vec![0; n],
            fermions: 0,
        }
    }

    /// Builds a monomial from exponents and a strictly increasing fermion list.
    pub fn new(alpha: Vec<u32>, fermions: &[usize]) -> Result<Self, PolyError> {
        let n = alpha.len();
        let mut mask = 0u32;
        let mut last = 0;
        for &p in fermions {
            if p == 0 || p > n {
                return Err(PolyError::IndexOutOfRange { index: p, n });
            }
            assert!(p > last, "fermion indices must be strictly increasing");
            last = p;
            mask |= 1 << (p - 1);
        }
        Ok(Monomial {
            alpha,
            fermions: mask,
        })
    }

    /// Normal-orders `x^alpha theta_{p_1} ... theta_{p_t}` given in arbitrary
    /// order, returning the permutation sign; `None` when an index repeats.
    pub fn from_unordered(alpha: Vec<u32>, fermions: &[usize]) -> Result<Option<(i64, Self)>, PolyError> {
        let mut mono = Monomial {
            alpha,
            fermions: 0,
        };
        let n = mono.n();
        let mut sign = 1;
        // multiply from the right: m * theta_p
        for &p in fermions {
            if p == 0 || p > n {
                return Err(PolyError::IndexOutOfRange { index: p, n });
            }
            let bit = 1u32 << (p - 1);
            if mono.fermions & bit != 0 {
                return Ok(None);
            }
            let above = (mono.fermions & !(bit | (bit - 1))).count_ones();
            sign *= sign_of(above);
            mono.fermions |= bit;
        }
        Ok(Some((sign, mono)))
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.alpha[i - 1]
    }

    /// Bosonic total degree `|alpha|`.
    pub fn degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn fermion_mask(&self) -> u32 {
        self.fermions
    }

    pub fn fermion_count(&self) -> usize {
        self.fermions.count_ones() as usize
    }

    pub fn has_fermion(&self, p: usize) -> bool {
        p >= 1 && p <= self.n() && self.fermions & (1 << (p - 1)) != 0
    }

    /// 1-based fermion indices in increasing order.
    pub fn fermions(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&p| self.has_fermion(p)).collect()
    }

    pub fn parity(&self) -> Parity {
        Parity::of_count(self.fermion_count())
    }

    pub fn times_x(&self, i: usize, power: u32) -> Self {
        let mut out = self.clone();
        out.alpha[i - 1] += power;
        out
    }

    /// `d/dx_i`, as `(alpha_i, x^(alpha - e_i) theta_I)`.
    pub fn d_boson(&self, i: usize) -> Option<(u32, Self)> {
        let e = self.alpha[i - 1];
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        out.alpha[i - 1] -= 1;
        Some((e, out))
    }

    /// Left odd derivation `d/dtheta_p`: sign `(-1)^j` where `j` is the
    /// position of `theta_p` in the normal-ordered fermion list.
    pub fn d_fermion(&self, p: usize) -> Option<(i64, Self)> {
        let bit = 1u32 << (p - 1);
        if self.fermions & bit == 0 {
            return None;
        }
        let below = (self.fermions & (bit - 1)).count_ones();
        let mut out = self.clone();
        out.fermions &= !bit;
        Some((sign_of(below), out))
    }

    /// Left multiplication `theta_p * m`.
    pub fn theta_times(&self, p: usize) -> Option<(i64, Self)> {
        let bit = 1u32 << (p - 1);
        if self.fermions & bit != 0 {
            return None;
        }
        let below = (self.fermions & (bit - 1)).count_ones();
        let mut out = self.clone();
        out.fermions |= bit;
        Some((sign_of(below), out))
    }

    /// Product in normal order; sign counts inversions between the two
    /// fermion lists.
    pub fn mul(&self, other: &Self) -> Option<(i64, Self)> {
        if self.fermions & other.fermions != 0 {
            return None;
        }
        let mut inversions = 0;
        let mut right = other.fermions;
        while right != 0 {
            let bit = right & right.wrapping_neg();
            inversions += (self.fermions & !(bit | (bit - 1))).count_ones();
            right &= right - 1;
        }
        let alpha = self
            .alpha
            .iter()
            .zip(&other.alpha)
            .map(|(a, b)| a + b)
            .collect();
        Some((
            sign_of(inversions),
            Monomial {
                alpha,
                fermions: self.fermions | other.fermions,
            },
        ))
    }
}

impl Ord for Monomial {
    /// Graded on `|alpha|` (higher first), then lex on `alpha` (larger
    /// first, so `x1` precedes `x2`), then lex on the fermion list.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.alpha.cmp(&self.alpha))
            .then_with(|| self.fermions().cmp(&other.fermions()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (i, &e) in self.alpha.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for p in self.fermions() {
            factors.push(format!("t{p}"));
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite sum of monomials with nonzero scalar coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SuperPolynomial {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variable pairs supported");
        SuperPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn term(mono: Monomial, c: Scalar) -> Self {
        let mut out = Self::zero(mono.n());
        out.add_term(mono, c);
        out
    }

    pub fn monomial(mono: Monomial) -> Self {
        Self::term(mono, Scalar::one())
    }

    /// `x_i`
    pub fn x(n: usize, i: usize) -> Result<Self, PolyError> {
        if i == 0 || i > n {
            return Err(PolyError::IndexOutOfRange { index: i, n });
        }
        Ok(Self::monomial(Monomial::one(n).times_x(i, 1)))
    }

    /// `theta_p`
    pub fn theta(n: usize, p: usize) -> Result<Self, PolyError> {
        let mono = Monomial::new(vec![0; n], &[p])?;
        Ok(Self::monomial(mono))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Discriminant of the quadratic field the coefficients live in.
    pub fn field(&self) -> Result<u64, FieldMismatch> {
        let mut d = 0;
        for c in self.terms.values() {
            match (d, c.discriminant()) {
                (_, 0) => {}
                (0, e) => d = e,
                (l, r) if l == r => {}
                (l, r) => return Err(FieldMismatch { left: l, right: r }),
            }
        }
        Ok(d)
    }

    /// Adds `c * mono` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        debug_assert_eq!(mono.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_size(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n {
            Err(PolyError::SizeMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    fn check_index(&self, i: usize) -> Result<(), PolyError> {
        if i == 0 || i > self.n {
            Err(PolyError::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_size(other)?;
        let d = self.field()?;
        let e = other.field()?;
        if d != 0 && e != 0 && d != e {
            return Err(FieldMismatch { left: d, right: e }.into());
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Product in normal order.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_size(other)?;
        let d = self.field()?;
        let e = other.field()?;
        if d != 0 && e != 0 && d != e {
            return Err(FieldMismatch { left: d, right: e }.into());
        }
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((sign, m)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Maps every term through a monomial-level operator that returns at most
    /// one signed/weighted image.
    pub fn map_terms<F>(&self, mut op: F) -> Self
    where
        F: FnMut(&Monomial) -> Option<(i64, Monomial)>,
    {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((w, image)) = op(m) {
                out.add_term(image, c * &Scalar::from_int(w));
            }
        }
        out
    }

    /// Even derivation `d/dx_i`.
    pub fn d_boson(&self, i: usize) -> Result<Self, PolyError> {
        self.check_index(i)?;
        Ok(self.map_terms(|m| m.d_boson(i).map(|(e, m)| (e as i64, m))))
    }

    /// Odd derivation `d/dtheta_p`, acting from the left.
    pub fn d_fermion(&self, p: usize) -> Result<Self, PolyError> {
        self.check_index(p)?;
        Ok(self.map_terms(|m| m.d_fermion(p)))
    }

    /// `x_i * f`
    pub fn times_x(&self, i: usize) -> Result<Self, PolyError> {
        self.check_index(i)?;
        Ok(self.map_terms(|m| Some((1, m.times_x(i, 1)))))
    }

    /// `theta_p * f`
    pub fn theta_times(&self, p: usize) -> Result<Self, PolyError> {
        self.check_index(p)?;
        Ok(self.map_terms(|m| m.theta_times(p)))
    }

    /// `Some(parity)` when every term has the same parity (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        match it.next() {
            None => Some(Parity::Even),
            Some(first) => it.all(|p| p == first).then_some(first),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }
}

impl Add<&SuperPolynomial> for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub<&SuperPolynomial> for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.checked_add(&-rhs).expect("incompatible polynomials")
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self))
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPolynomial({})", format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> SuperPolynomial {
        parse_poly(text, 3).unwrap()
    }

    #[test]
    fn theta_squares_to_zero() {
        let t1 = SuperPolynomial::theta(3, 1).unwrap();
        assert!(t1.mul(&t1).unwrap().is_zero());
    }

    #[test]
    fn thetas_anticommute() {
        let t1 = SuperPolynomial::theta(3, 1).unwrap();
        let t2 = SuperPolynomial::theta(3, 2).unwrap();
        assert_eq!(t2.mul(&t1).unwrap(), -&t1.mul(&t2).unwrap());
        assert_eq!(t2.mul(&t1).unwrap(), p("-t1*t2"));
    }

    #[test]
    fn cross_terms_cancel() {
        let f = p("x1 + t1");
        let g = p("x1 - t1");
        assert_eq!(f.mul(&g).unwrap(), p("x1^2"));
    }

    #[test]
    fn boson_derivative() {
        assert_eq!(p("x1^3").d_boson(1).unwrap(), p("3*x1^2"));
        assert!(p("x1*t1").d_boson(2).unwrap().is_zero());
        assert_eq!(p("x1*x2*t3").d_boson(1).unwrap(), p("x2*t3"));
        assert!(matches!(
            p("x1").d_boson(4),
            Err(PolyError::IndexOutOfRange { index: 4, n: 3 })
        ));
    }

    #[test]
    fn fermion_derivative() {
        assert_eq!(p("t1*t2").d_fermion(2).unwrap(), p("-t1"));
        assert_eq!(p("t1*t2*t3").d_fermion(1).unwrap(), p("t2*t3"));
        assert!(p("x1^2").d_fermion(1).unwrap().is_zero());
        assert!(p("x1").d_fermion(0).is_err());
    }

    #[test]
    fn unordered_constructor_sign() {
        let (sign, m) = Monomial::from_unordered(vec![0, 0, 0], &[3, 1, 2]).unwrap().unwrap();
        assert_eq!(m.fermions(), vec![1, 2, 3]);
        assert_eq!(sign, 1);
        let (sign, _) = Monomial::from_unordered(vec![0, 0, 0], &[2, 1]).unwrap().unwrap();
        assert_eq!(sign, -1);
        assert!(Monomial::from_unordered(vec![0, 0, 0], &[2, 2]).unwrap().is_none());
    }

    #[test]
    fn monomial_order_is_graded() {
        let hi = Monomial::new(vec![2, 0, 0], &[]).unwrap();
        let x1 = Monomial::new(vec![1, 0, 0], &[]).unwrap();
        let x2 = Monomial::new(vec![0, 1, 0], &[]).unwrap();
        assert!(hi < x1);
        assert!(x1 < x2);
    }

    #[test]
    fn parity_detection() {
        assert_eq!(p("x1*t1 + t2").parity(), Some(Parity::Odd));
        assert_eq!(p("x1 + t2").parity(), None);
        assert_eq!(p("0").parity(), Some(Parity::Even));
    }

    #[test]
    fn field_mismatch_in_product() {
        let a = p("s2*x1");
        let b = p("s3*x2");
        assert!(matches!(a.mul(&b), Err(PolyError::Field(_))));
    }
}
