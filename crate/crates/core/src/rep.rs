//! The oscillator representations `phi_r` of `gl(n|n)` on super polynomials.
//!
//! For `i <= r` the roles of `d/dx_i` and `-x_i` are swapped relative to the
//! canonical polynomial action. Every matrix unit sends a monomial to a
//! scalar multiple of a single monomial, which [`apply_unit_monomial`]
//! exposes directly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::liealg::{superbracket, AlgebraBasis, AlgebraElement, LieError};
use crate::scalar::Scalar;
use crate::superpoly::{Monomial, PolyError, SuperPolynomial};

pub mod canonical;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("need n >= 3 and 0 <= r <= n, got n = {n}, r = {r}")]
    BadParams { n: usize, r: usize },
    #[error("matrix index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("operator over gl({op}|{op}) applied to polynomials in {poly} variable pairs")]
    SizeMismatch { op: usize, poly: usize },
    #[error("element is not parity-homogeneous")]
    Inhomogeneous,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RepParams {
    pub n: usize,
    pub r: usize,
}

impl RepParams {
    pub fn new(n: usize, r: usize) -> Result<Self, RepError> {
        if n < 3 || r > n {
            return Err(RepError::BadParams { n, r });
        }
        Ok(RepParams { n, r })
    }
}

fn neg(x: Option<(i64, Monomial)>) -> Option<(i64, Monomial)> {
    x.map(|(c, m)| (-c, m))
}

/// `phi_r(E_{a,b})` on a single monomial, as `(coefficient, monomial)`.
///
/// Indices must already be validated.
pub fn apply_unit_monomial(params: RepParams, a: usize, b: usize, m: &Monomial) -> Option<(i64, Monomial)> {
    let RepParams { n, r } = params;
    let e = |i: usize| m.exponent(i) as i64;
    match (a <= n, b <= n) {
        (true, true) => {
            let (i, j) = (a, b);
            match (i <= r, j <= r) {
                // -x_j d/dx_i - delta_ij
                (true, true) if i == j => Some((-e(i) - 1, m.clone())),
                (true, true) => m.d_boson(i).map(|(c, m)| (-(c as i64), m.times_x(j, 1))),
                // d/dx_i d/dx_j
                (true, false) => {
                    let (c1, m) = m.d_boson(j)?;
                    let (c2, m) = m.d_boson(i)?;
                    Some((c1 as i64 * c2 as i64, m))
                }
                // -x_i x_j
                (false, true) => Some((-1, m.times_x(i, 1).times_x(j, 1))),
                // x_i d/dx_j
                (false, false) => m.d_boson(j).map(|(c, m)| (c as i64, m.times_x(i, 1))),
            }
        }
        (true, false) => {
            let (i, p) = (a, b - n);
            let (s, m) = m.d_fermion(p)?;
            if i <= r {
                m.d_boson(i).map(|(c, m)| (s * c as i64, m))
            } else {
                Some((s, m.times_x(i, 1)))
            }
        }
        (false, true) => {
            let (p, j) = (a - n, b);
            if j <= r {
                neg(m.times_x(j, 1).theta_times(p))
            } else {
                let (c, m) = m.d_boson(j)?;
                m.theta_times(p).map(|(s, m)| (s * c as i64, m))
            }
        }
        (false, false) => {
            let (p, q) = (a - n, b - n);
            let (s1, m) = m.d_fermion(q)?;
            m.theta_times(p).map(|(s2, m)| (s1 * s2, m))
        }
    }
}

fn check_unit(params: RepParams, a: usize, b: usize) -> Result<(), RepError> {
    let max = 2 * params.n;
    for index in [a, b] {
        if index == 0 || index > max {
            return Err(RepError::IndexOutOfRange { index, max });
        }
    }
    Ok(())
}

fn check_poly(params: RepParams, f: &SuperPolynomial) -> Result<(), RepError> {
    if f.n() != params.n {
        return Err(RepError::SizeMismatch { op: params.n, poly: f.n() });
    }
    Ok(())
}

/// `phi_r(E_{a,b}) f`
pub fn apply_unit(params: RepParams, a: usize, b: usize, f: &SuperPolynomial) -> Result<SuperPolynomial, RepError> {
    check_unit(params, a, b)?;
    check_poly(params, f)?;
    Ok(f.map_terms(|m| apply_unit_monomial(params, a, b, m)))
}

/// `phi_r(A)` on a single monomial, with rational coefficients.
pub fn apply_element_monomial(params: RepParams, x: &AlgebraElement, m: &Monomial) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero(params.n);
    for (a, b, c) in x.entries() {
        if let Some((w, image)) = apply_unit_monomial(params, a, b, m) {
            out.add_term(image, Scalar::rational(c * BigInt::from(w)));
        }
    }
    out
}

/// `phi_r(A) f`, extended linearly over the matrix entries of `A`.
pub fn apply_element(params: RepParams, x: &AlgebraElement, f: &SuperPolynomial) -> Result<SuperPolynomial, RepError> {
    if x.n() != params.n {
        return Err(RepError::SizeMismatch { op: x.n(), poly: params.n });
    }
    check_poly(params, f)?;
    let mut out = SuperPolynomial::zero(params.n);
    for (m, c) in f.terms() {
        for (image, d) in apply_element_monomial(params, x, m).terms() {
            out.add_term(image.clone(), c * d);
        }
    }
    Ok(out)
}

/// Applies an operator word; `word[0]` is the outermost factor.
pub fn apply_word(params: RepParams, word: &[AlgebraElement], f: &SuperPolynomial) -> Result<SuperPolynomial, RepError> {
    word.iter().rev().try_fold(f.clone(), |acc, x| apply_element(params, x, &acc))
}

/// Eigenvalue of the degree operator on a monomial: `-sum_{i<=r} alpha_i +
/// sum_{j>r} alpha_j + t`.
pub fn degree(params: RepParams, m: &Monomial) -> i64 {
    let a = m.alpha();
    let low: i64 = a[..params.r].iter().map(|&e| e as i64).sum();
    let high: i64 = a[params.r..].iter().map(|&e| e as i64).sum();
    high - low + m.fermion_count() as i64
}

/// The degree operator `D` applied to `f`.
pub fn degree_op(params: RepParams, f: &SuperPolynomial) -> Result<SuperPolynomial, RepError> {
    check_poly(params, f)?;
    Ok(f.map_terms(|m| Some((degree(params, m), m.clone()))))
}

/// Eigenvalues of the diagonal units `E_{a,a}`, `a = 1..=2n`, on `m`.
pub fn gl_weight(params: RepParams, m: &Monomial) -> Vec<i64> {
    let n = params.n;
    (1..=n)
        .map(|i| {
            let e = m.exponent(i) as i64;
            if i <= params.r {
                -e - 1
            } else {
                e
            }
        })
        .chain((1..=n).map(|p| m.has_fermion(p) as i64))
        .collect()
}

/// Weight of `m` with respect to a diagonal Cartan basis.
pub fn weight(params: RepParams, cartan: &AlgebraBasis, m: &Monomial) -> Vec<i64> {
    let gl = gl_weight(params, m);
    cartan
        .elements
        .iter()
        .map(|h| {
            h.entries()
                .map(|(a, b, c)| {
                    assert_eq!(a, b, "Cartan elements must be diagonal");
                    let c = c.to_integer().to_i64().expect("small integer Cartan coefficients");
                    c * gl[a - 1]
                })
                .sum()
        })
        .collect()
}

/// `phi([A,B]) f - (phi(A) phi(B) - (-1)^{|A||B|} phi(B) phi(A)) f`.
pub fn homomorphism_defect(
    params: RepParams,
    x: &AlgebraElement,
    y: &AlgebraElement,
    f: &SuperPolynomial,
) -> Result<SuperPolynomial, RepError> {
    let px = x.parity().ok_or(RepError::Inhomogeneous)?;
    let py = y.parity().ok_or(RepError::Inhomogeneous)?;
    let lhs = apply_element(params, &superbracket(x, y)?, f)?;
    let xy = apply_element(params, x, &apply_element(params, y, f)?)?;
    let yx = apply_element(params, y, &apply_element(params, x, f)?)?;
    let rhs = &xy - &yx.scale(&Scalar::from_int(px.exchange_sign(py)));
    Ok(&lhs - &rhs)
}
