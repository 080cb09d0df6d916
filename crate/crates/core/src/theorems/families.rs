//! Explicit spanning families used as expected bases of the even submodules.
//!
//! Each family is indexed by an exponent vector `alpha` and an increasing
//! fermion tuple `I = (i_1, ..., i_t)`; positions `p` in `I` are 1-based.

use crate::scalar::Scalar;
use crate::superpoly::{Monomial, SuperPolynomial};

/// A family member with a readable index label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub label: String,
    pub value: SuperPolynomial,
}

/// Increasing `t`-subsets of `1..=n`.
pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, t, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors of length `n` with `|alpha| = total`.
pub fn exponents(n: usize, total: i64) -> Vec<Vec<i64>> {
    if total < 0 {
        return Vec::new();
    }
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in exponents(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `c * x^alpha * theta_{ts[0]} theta_{ts[1]} ...`; zero for a negative
/// exponent or a repeated fermion.
fn mono(n: usize, c: &Scalar, alpha: &[i64], ts: &[usize]) -> SuperPolynomial {
    if c.is_zero() || alpha.iter().any(|&a| a < 0) {
        return SuperPolynomial::zero(n);
    }
    let alpha = alpha.iter().map(|&a| a as u32).collect();
    match Monomial::from_unordered(alpha, ts).expect("indices in range") {
        Some((sign, m)) => SuperPolynomial::term(m, c * &Scalar::from_int(sign)),
        None => SuperPolynomial::zero(n),
    }
}

fn shifted(alpha: &[i64], plus: Option<usize>, minus: Option<usize>) -> Vec<i64> {
    let mut a = alpha.to_vec();
    if let Some(i) = plus {
        a[i - 1] += 1;
    }
    if let Some(i) = minus {
        a[i - 1] -= 1;
    }
    a
}

fn without(idx: &[usize], p: usize) -> Vec<usize> {
    idx.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &i)| i).collect()
}

fn parity_sign(p: usize) -> i64 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn label(name: &str, alpha: &[i64], idx: &[usize]) -> String {
    format!("{name}(alpha={alpha:?}; I={idx:?})")
}

/// `sum_p sum_s (-1)^p alpha_{i_p} x^{alpha - e_{i_p} + e_s} theta_s theta_{I \ i_p}`
fn contraction(n: usize, alpha: &[i64], idx: &[usize]) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero(n);
    for (p0, &ip) in idx.iter().enumerate() {
        let c = Scalar::from_int(parity_sign(p0 + 1) * alpha[ip - 1]);
        let rest = without(idx, p0);
        for s in 1..=n {
            let mut ts = vec![s];
            ts.extend(&rest);
            out = &out + &mono(n, &c, &shifted(alpha, Some(s), Some(ip)), &ts);
        }
    }
    out
}

/// `sum_p sum_s (-1)^p alpha_s x^{alpha + e_{i_p} - e_s} theta_s theta_{I \ i_p}`
fn transfer(n: usize, alpha: &[i64], idx: &[usize]) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero(n);
    for (p0, &ip) in idx.iter().enumerate() {
        let rest = without(idx, p0);
        for s in 1..=n {
            let c = Scalar::from_int(parity_sign(p0 + 1) * alpha[s - 1]);
            let mut ts = vec![s];
            ts.extend(&rest);
            out = &out + &mono(n, &c, &shifted(alpha, Some(ip), Some(s)), &ts);
        }
    }
    out
}

/// `f(alpha; I) = (k + n - 2t) x^alpha theta_I + contraction`
pub fn f_even(n: usize, k: i64, alpha: &[i64], idx: &[usize]) -> SuperPolynomial {
    let t = idx.len() as i64;
    let head = mono(n, &Scalar::from_int(k + n as i64 - 2 * t), alpha, idx);
    &head + &contraction(n, alpha, idx)
}

/// `g(alpha; I) = xi * sum_p (-1)^p alpha_{i_p} x^{alpha - e_{i_p}} theta_{I \ i_p}`
pub fn g_even(n: usize, alpha: &[i64], idx: &[usize]) -> SuperPolynomial {
    contraction(n, alpha, idx)
}

/// `f'(alpha; I) = (t - k) x^alpha theta_I + transfer`
pub fn f_prime(n: usize, k: i64, alpha: &[i64], idx: &[usize]) -> SuperPolynomial {
    let t = idx.len() as i64;
    let head = mono(n, &Scalar::from_int(t - k), alpha, idx);
    &head + &transfer(n, alpha, idx)
}

/// `g'(alpha; I) = t x^alpha theta_I - transfer`
pub fn g_prime(n: usize, alpha: &[i64], idx: &[usize]) -> SuperPolynomial {
    let head = mono(n, &Scalar::from_int(idx.len() as i64), alpha, idx);
    &head - &transfer(n, alpha, idx)
}

/// `h(alpha; I) = (k - t) x^alpha theta_I + transfer
///  +- sqrt(k) sum_s alpha_s x^{alpha - e_s} theta_I theta_s`
pub fn h_q(n: usize, k: i64, alpha: &[i64], idx: &[usize], positive: bool) -> SuperPolynomial {
    let t = idx.len() as i64;
    let mut out = &mono(n, &Scalar::from_int(k - t), alpha, idx) + &transfer(n, alpha, idx);
    let root = Scalar::sqrt_of(k as u64);
    let root = if positive { root } else { -root };
    for s in 1..=n {
        let c = &root * &Scalar::from_int(alpha[s - 1]);
        let mut ts = idx.to_vec();
        ts.push(s);
        out = &out + &mono(n, &c, &shifted(alpha, None, Some(s)), &ts);
    }
    out
}

/// Whether `alpha_j > 0` for some `j` larger than every index in `idx`.
fn mass_beyond(alpha: &[i64], idx: &[usize]) -> bool {
    let top = idx.iter().copied().max().unwrap_or(0);
    alpha.iter().enumerate().any(|(j, &a)| j + 1 > top && a > 0)
}

/// The `f` family of `A^0_{k,t}`: `|alpha| = k - t`, and `n` may occur in
/// `I` only when every `alpha_{i_p}` vanishes.
pub fn lemma22_f_family(n: usize, k: i64, t: usize) -> Vec<Member> {
    let mut out = Vec::new();
    for idx in subsets(n, t) {
        for alpha in exponents(n, k - t as i64) {
            let touches = idx.iter().any(|&i| alpha[i - 1] != 0);
            if touches && idx.contains(&n) {
                continue;
            }
            out.push(Member {
                label: label("f", &alpha, &idx),
                value: f_even(n, k, &alpha, &idx),
            });
        }
    }
    out
}

/// The `g` family of `A^0_{k,t}`: `|alpha| = k - t` and `n` in `I`. Members
/// that vanish identically are dropped.
pub fn lemma22_g_family(n: usize, k: i64, t: usize) -> Vec<Member> {
    let mut out = Vec::new();
    for idx in subsets(n, t).into_iter().filter(|idx| idx.contains(&n)) {
        for alpha in exponents(n, k - t as i64) {
            let value = g_even(n, &alpha, &idx);
            if !value.is_zero() {
                out.push(Member {
                    label: label("g", &alpha, &idx),
                    value,
                });
            }
        }
    }
    out
}

/// The `f'` family of `A^n_{k,t}`: `|alpha| = t - k` with mass beyond `max I`.
pub fn lemma24_f_family(n: usize, k: i64, t: usize) -> Vec<Member> {
    let mut out = Vec::new();
    for idx in subsets(n, t) {
        for alpha in exponents(n, t as i64 - k) {
            if mass_beyond(&alpha, &idx) {
                out.push(Member {
                    label: label("f'", &alpha, &idx),
                    value: f_prime(n, k, &alpha, &idx),
                });
            }
        }
    }
    out
}

/// The `g'` family of `A^n_{k,t}`: `|alpha| = t - k` with no mass beyond `max I`.
pub fn lemma24_g_family(n: usize, k: i64, t: usize) -> Vec<Member> {
    let mut out = Vec::new();
    for idx in subsets(n, t) {
        for alpha in exponents(n, t as i64 - k) {
            if !mass_beyond(&alpha, &idx) {
                out.push(Member {
                    label: label("g'", &alpha, &idx),
                    value: g_prime(n, &alpha, &idx),
                });
            }
        }
    }
    out
}

/// The `h` family of `A^0_k` for the sign `+` or `-`: `|alpha| = k - t`,
/// `0 <= t < min(k, n)`, with mass beyond `max I`.
pub fn basis37_family(n: usize, k: i64, positive: bool) -> Vec<Member> {
    let mut out = Vec::new();
    let top = (k.max(0) as usize).min(n);
    for t in 0..top {
        for idx in subsets(n, t) {
            for alpha in exponents(n, k - t as i64) {
                if mass_beyond(&alpha, &idx) {
                    out.push(Member {
                        label: label(if positive { "h+" } else { "h-" }, &alpha, &idx),
                        value: h_q(n, k, &alpha, &idx, positive),
                    });
                }
            }
        }
    }
    out
}
