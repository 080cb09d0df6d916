//! The matrix superalgebra `gl(n|n)` and its strange subalgebras.
//!
//! Indices are 1-based: rows and columns `1..=n` form the even block,
//! `n+1..=2n` the odd block.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{self, RowEchelon, SparseVec};
use crate::scalar::Scalar;
use crate::superpoly::Parity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("elements of gl({left}|{left}) and gl({right}|{right}) cannot be combined")]
    SizeMismatch { left: usize, right: usize },
    #[error("matrix index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("the strange algebras need n >= 3, got n = {0}")]
    TooSmall(usize),
    #[error("element is not parity-homogeneous")]
    Inhomogeneous,
}

/// Sparse `2n x 2n` rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// The matrix unit `E_{a,b}`.
    pub fn unit(n: usize, a: usize, b: usize) -> Result<Self, LieError> {
        Self::from_terms(n, &[(a, b, 1)])
    }

    /// `sum c * E_{a,b}` over integer coefficients.
    pub fn from_terms(n: usize, terms: &[(usize, usize, i64)]) -> Result<Self, LieError> {
        let mut out = Self::zero(n);
        for &(a, b, c) in terms {
            out.add_entry(a, b, rat(c))?;
        }
        Ok(out)
    }

    pub fn identity(n: usize) -> Self {
        let terms: Vec<_> = (1..=2 * n).map(|a| (a, a, 1)).collect();
        Self::from_terms(n, &terms).expect("diagonal indices in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_entry(&mut self, a: usize, b: usize, c: BigRational) -> Result<(), LieError> {
        let max = 2 * self.n;
        for index in [a, b] {
            if index == 0 || index > max {
                return Err(LieError::IndexOutOfRange { index, max });
            }
        }
        let v = self.entries.remove(&(a, b)).unwrap_or_default() + c;
        if !v.is_zero() {
            self.entries.insert((a, b), v);
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn unit_parity(n: usize, a: usize, b: usize) -> Parity {
        if (a <= n) == (b <= n) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn project(&self, parity: Parity) -> Self {
        AlgebraElement {
            n: self.n,
            entries: self
                .entries
                .iter()
                .filter(|(&(a, b), _)| Self::unit_parity(self.n, a, b) == parity)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn even_part(&self) -> Self {
        self.project(Parity::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.project(Parity::Odd)
    }

    /// `Some(parity)` for homogeneous elements; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.entries.keys().map(|&(a, b)| Self::unit_parity(self.n, a, b));
        match it.next() {
            None => Some(Parity::Even),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    fn check_size(&self, other: &Self) -> Result<(), LieError> {
        if self.n != other.n {
            Err(LieError::SizeMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (&(a, b), c) in &other.entries {
            out.add_entry(a, b, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        if !c.is_zero() {
            out.entries = self.entries.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LieError> {
        self.add(&other.scale(&rat(-1)))
    }

    /// Ordinary matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self, LieError> {
        self.check_size(other)?;
        let mut out = Self::zero(self.n);
        for (&(a, b), x) in &self.entries {
            for (&(_, d), y) in other.entries.range((b, 0)..=(b, usize::MAX)) {
                out.add_entry(a, d, x * y)?;
            }
        }
        Ok(out)
    }

    /// Coordinates in the flattened `(2n)^2` matrix space.
    pub fn to_sparse(&self) -> SparseVec {
        let m = 2 * self.n;
        self.entries
            .iter()
            .map(|(&(a, b), c)| ((a - 1) * m + (b - 1), Scalar::rational(c.clone())))
            .collect()
    }
}

/// `[a, b] = ab - (-1)^{|a||b|} ba`, extended bilinearly over the homogeneous
/// parts.
pub fn superbracket(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, LieError> {
    a.check_size(b)?;
    let mut out = AlgebraElement::zero(a.n);
    for pa in [Parity::Even, Parity::Odd] {
        let x = a.project(pa);
        if x.is_zero() {
            continue;
        }
        for pb in [Parity::Even, Parity::Odd] {
            let y = b.project(pb);
            if y.is_zero() {
                continue;
            }
            let xy = x.matmul(&y)?;
            let yx = y.matmul(&x)?.scale(&rat(pa.exchange_sign(pb)));
            out = out.add(&xy.sub(&yx)?)?;
        }
    }
    Ok(out)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(a, b), c)) in self.entries.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let m = c.abs();
            if !m.is_one() {
                write!(f, "{m}*")?;
            }
            write!(f, "E{a},{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement(n={}, {self})", self.n)
    }
}

struct Entries<'a>(&'a BTreeMap<(usize, usize), BigRational>);

impl Serialize for Entries<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (&(a, b), c) in self.0 {
            seq.serialize_element(&(a, b, c.to_string()))?;
        }
        seq.end()
    }
}

impl Serialize for AlgebraElement {
    /// `{"n": n, "entries": [[row, col, "p/q"], ...]}`
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraElement", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &Entries(&self.entries))?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BasisName {
    Gl,
    P,
    QTilde,
    PEven,
    PEvenPos,
    QEven,
    QEvenPos,
    CartanP,
    CartanQ,
    /// `L1 + L2` for a split point `r`.
    L12,
    L12Pos,
    CartanL12,
}

impl fmt::Display for BasisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().expect("string"))
    }
}

/// Which of the two candidate spanning lists is used for `Q~(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QForm {
    /// Even part `E_ij + E_{n+j,n+i}`, odd part `E_{i,n+j} + E_{n+j,i}`.
    Twisted,
    /// Even part `E_ij + E_{n+i,n+j}`, odd part `E_{i,n+j} + E_{n+i,j}`.
    Standard,
}

/// Ordered list of elements spanning a subspace of `gl(n|n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraBasis {
    pub name: BasisName,
    pub n: usize,
    pub elements: Vec<AlgebraElement>,
}

impl AlgebraBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        RowEchelon::from_vectors(&self.elements.iter().map(AlgebraElement::to_sparse).collect::<Vec<_>>()).rank()
    }

    /// First basis pair whose bracket leaves the span, if any.
    pub fn closure_defect(&self) -> Result<Option<(usize, usize)>, LieError> {
        let span = RowEchelon::from_vectors(&self.elements.iter().map(AlgebraElement::to_sparse).collect::<Vec<_>>());
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate().skip(i) {
                if !span.contains(&superbracket(a, b)?.to_sparse()) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_closed(&self) -> Result<bool, LieError> {
        Ok(self.closure_defect()?.is_none())
    }

    /// Concatenation, keeping the name of `self`.
    pub fn extended(&self, name: BasisName, other: &AlgebraBasis) -> AlgebraBasis {
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        AlgebraBasis { name, n: self.n, elements }
    }
}

/// Exact coordinates of `v` in the span of `basis`, or `None` outside it.
pub fn span_membership(v: &AlgebraElement, basis: &AlgebraBasis) -> Result<Option<Vec<BigRational>>, LieError> {
    if v.n != basis.n {
        return Err(LieError::SizeMismatch { left: v.n, right: basis.n });
    }
    let cols: Vec<SparseVec> = basis.elements.iter().map(AlgebraElement::to_sparse).collect();
    Ok(linalg::solve(&cols, &v.to_sparse()).map(|coords| {
        coords
            .into_iter()
            .map(|c| c.to_rational().cloned().expect("rational coordinates"))
            .collect()
    }))
}

fn check_n(n: usize) -> Result<(), LieError> {
    if n < 3 {
        Err(LieError::TooSmall(n))
    } else {
        Ok(())
    }
}

fn el(n: usize, terms: &[(usize, usize, i64)]) -> AlgebraElement {
    AlgebraElement::from_terms(n, terms).expect("indices in range")
}

fn basis(name: BasisName, n: usize, elements: Vec<AlgebraElement>) -> AlgebraBasis {
    AlgebraBasis { name, n, elements }
}

/// All matrix units, row-major.
pub fn basis_gl(n: usize) -> AlgebraBasis {
    let m = 2 * n;
    let elements = (1..=m)
        .flat_map(|a| (1..=m).map(move |b| (a, b)))
        .map(|(a, b)| el(n, &[(a, b, 1)]))
        .collect();
    basis(BasisName::Gl, n, elements)
}

/// `h_i = E_ii - E_{i+1,i+1} - E_{n+i,n+i} + E_{n+i+1,n+i+1}`
fn cartan_p_element(n: usize, i: usize) -> AlgebraElement {
    el(n, &[(i, i, 1), (i + 1, i + 1, -1), (n + i, n + i, -1), (n + i + 1, n + i + 1, 1)])
}

/// `E_ij - E_{n+j,n+i}`
fn p_even_unit(n: usize, i: usize, j: usize) -> AlgebraElement {
    el(n, &[(i, j, 1), (n + j, n + i, -1)])
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

pub fn cartan_p(n: usize) -> Result<AlgebraBasis, LieError> {
    check_n(n)?;
    Ok(basis(BasisName::CartanP, n, (1..n).map(|i| cartan_p_element(n, i)).collect()))
}

pub fn p_even_pos(n: usize) -> Result<AlgebraBasis, LieError> {
    check_n(n)?;
    Ok(basis(BasisName::PEvenPos, n, pairs(n).map(|(i, j)| p_even_unit(n, i, j)).collect()))
}

pub fn p_even(n: usize) -> Result<AlgebraBasis, LieError> {
    let mut elements = cartan_p(n)?.elements;
    elements.extend(pairs(n).map(|(i, j)| p_even_unit(n, i, j)));
    elements.extend(pairs(n).map(|(i, j)| p_even_unit(n, j, i)));
    Ok(basis(BasisName::PEven, n, elements))
}

/// The `2n^2 - 1` spanning elements of `P(n-1)`: Cartan, even raising, even
/// lowering, then the odd families `E_{n+i,j} - E_{n+j,i}`,
/// `E_{i,n+j} + E_{j,n+i}` (both `i < j`) and `E_{j,n+j}`.
pub fn basis_p(n: usize) -> Result<AlgebraBasis, LieError> {
    let mut elements = p_even(n)?.elements;
    elements.extend(pairs(n).map(|(i, j)| el(n, &[(n + i, j, 1), (n + j, i, -1)])));
    elements.extend(pairs(n).map(|(i, j)| el(n, &[(i, n + j, 1), (j, n + i, 1)])));
    elements.extend((1..=n).map(|j| el(n, &[(j, n + j, 1)])));
    Ok(basis(BasisName::P, n, elements))
}

/// `E_ii + E_{n+i,n+i}`
pub fn cartan_q(n: usize) -> Result<AlgebraBasis, LieError> {
    check_n(n)?;
    Ok(basis(BasisName::CartanQ, n, (1..=n).map(|i| el(n, &[(i, i, 1), (n + i, n + i, 1)])).collect()))
}

fn q_even_unit(n: usize, form: QForm, i: usize, j: usize) -> AlgebraElement {
    match form {
        QForm::Standard => el(n, &[(i, j, 1), (n + i, n + j, 1)]),
        QForm::Twisted => el(n, &[(i, j, 1), (n + j, n + i, 1)]),
    }
}

fn q_odd_unit(n: usize, form: QForm, i: usize, j: usize) -> AlgebraElement {
    match form {
        QForm::Standard => el(n, &[(i, n + j, 1), (n + i, j, 1)]),
        QForm::Twisted => el(n, &[(i, n + j, 1), (n + j, i, 1)]),
    }
}

pub fn q_even_pos(n: usize) -> Result<AlgebraBasis, LieError> {
    check_n(n)?;
    let elements = pairs(n).map(|(i, j)| q_even_unit(n, QForm::Standard, i, j)).collect();
    Ok(basis(BasisName::QEvenPos, n, elements))
}

pub fn q_even(n: usize) -> Result<AlgebraBasis, LieError> {
    let mut elements = cartan_q(n)?.elements;
    elements.extend(pairs(n).map(|(i, j)| q_even_unit(n, QForm::Standard, i, j)));
    elements.extend(pairs(n).map(|(i, j)| q_even_unit(n, QForm::Standard, j, i)));
    Ok(basis(BasisName::QEven, n, elements))
}

/// Spanning list of `Q~(n-1)` in the given form: diagonal even elements,
/// even raising, even lowering, odd `i != j`, odd traceless diagonal.
pub fn basis_q_form(n: usize, form: QForm) -> Result<AlgebraBasis, LieError> {
    check_n(n)?;
    let mut elements: Vec<_> = (1..=n).map(|i| q_even_unit(n, form, i, i)).collect();
    elements.extend(pairs(n).map(|(i, j)| q_even_unit(n, form, i, j)));
    elements.extend(pairs(n).map(|(i, j)| q_even_unit(n, form, j, i)));
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            elements.push(q_odd_unit(n, form, i, j));
        }
    }
    for i in 1..n {
        let a = q_odd_unit(n, form, i, i);
        let b = q_odd_unit(n, form, i + 1, i + 1);
        elements.push(a.sub(&b)?);
    }
    Ok(basis(BasisName::QTilde, n, elements))
}

/// Closure status of both candidate forms, in the order they are tried.
pub fn q_form_closure(n: usize) -> Result<Vec<(QForm, bool)>, LieError> {
    [QForm::Twisted, QForm::Standard]
        .into_iter()
        .map(|form| Ok((form, basis_q_form(n, form)?.is_closed()?)))
        .collect()
}

/// `Q~(n-1)`: the first candidate form that closes under the bracket.
pub fn basis_q(n: usize) -> Result<AlgebraBasis, LieError> {
    for form in [QForm::Twisted, QForm::Standard] {
        let b = basis_q_form(n, form)?;
        if b.is_closed()? {
            return Ok(b);
        }
    }
    unreachable!("the standard form is a subalgebra")
}

fn same_block(r: usize, i: usize, j: usize) -> bool {
    (i <= r) == (j <= r)
}

/// Cartan of `L1 + L2`: the `h_i` with `i != r`.
pub fn cartan_l12(n: usize, r: usize) -> Result<AlgebraBasis, LieError> {
    check_n(n)?;
    let elements = (1..n).filter(|&i| i != r).map(|i| cartan_p_element(n, i)).collect();
    Ok(basis(BasisName::CartanL12, n, elements))
}

/// `L1^+ + L2^+`
pub fn l12_pos(n: usize, r: usize) -> Result<AlgebraBasis, LieError> {
    check_n(n)?;
    let elements = pairs(n)
        .filter(|&(i, j)| same_block(r, i, j))
        .map(|(i, j)| p_even_unit(n, i, j))
        .collect();
    Ok(basis(BasisName::L12Pos, n, elements))
}

/// `L1 + L2`: the even `P` elements that do not cross the split at `r`.
pub fn l12(n: usize, r: usize) -> Result<AlgebraBasis, LieError> {
    let mut elements = cartan_l12(n, r)?.elements;
    elements.extend(l12_pos(n, r)?.elements);
    elements.extend(
        pairs(n)
            .filter(|&(i, j)| same_block(r, i, j))
            .map(|(i, j)| p_even_unit(n, j, i)),
    );
    Ok(basis(BasisName::L12, n, elements))
}

/// The Cartan subalgebra matching a positive part.
pub fn cartan_for(pos: &AlgebraBasis, r: usize) -> Result<AlgebraBasis, LieError> {
    match pos.name {
        BasisName::PEvenPos => cartan_p(pos.n),
        BasisName::QEvenPos => cartan_q(pos.n),
        BasisName::L12Pos => cartan_l12(pos.n, r),
        _ => cartan_p(pos.n),
    }
}
