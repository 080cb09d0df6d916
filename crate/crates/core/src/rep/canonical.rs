//! Named vectors that generate the submodules studied in the verifiers.

use num_rational::BigRational;

use super::RepError;
use crate::scalar::Scalar;
use crate::superpoly::{Monomial, SuperPolynomial};

fn domain<T>(msg: impl Into<String>) -> Result<T, RepError> {
    Err(RepError::Domain(msg.into()))
}

/// `c * prod x_i^{e_i} * theta_{p_1} ... theta_{p_t}` with the fermions in the
/// given order. Negative exponents are a domain error.
pub fn term(n: usize, c: i64, xs: &[(usize, i64)], ts: &[usize]) -> Result<SuperPolynomial, RepError> {
    let mut alpha = vec![0u32; n];
    for &(i, e) in xs {
        if e < 0 {
            return domain(format!("negative exponent {e} on x{i}"));
        }
        if i == 0 || i > n {
            return domain(format!("variable x{i} out of range"));
        }
        alpha[i - 1] += e as u32;
    }
    Ok(match Monomial::from_unordered(alpha, ts)? {
        Some((sign, m)) => SuperPolynomial::term(m, Scalar::from_int(sign * c)),
        None => SuperPolynomial::zero(n),
    })
}

/// Indices `a..=b`, empty when `a > b`.
pub fn range(a: i64, b: i64) -> Vec<usize> {
    (a.max(1)..=b).map(|i| i as usize).collect()
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `sum_{p in idx} (-1)^{p + shift} x_p theta_{idx \ p}`, fermions in the order of `idx`.
pub fn alternating(n: usize, idx: &[usize], shift: i64) -> Result<SuperPolynomial, RepError> {
    let mut out = SuperPolynomial::zero(n);
    for &p in idx {
        let rest: Vec<usize> = idx.iter().copied().filter(|&q| q != p).collect();
        out = &out + &term(n, sign(p as i64 + shift), &[(p, 1)], &rest)?;
    }
    Ok(out)
}

fn mul(f: &SuperPolynomial, g: &SuperPolynomial) -> Result<SuperPolynomial, RepError> {
    Ok(f.mul(g)?)
}

fn span_check(n: usize, idx: &[usize]) -> Result<(), RepError> {
    if idx.iter().any(|&i| i == 0 || i > n) {
        return domain("fermion index out of range");
    }
    Ok(())
}

fn contiguous(n: usize, a: i64, b: i64) -> Result<Vec<usize>, RepError> {
    if a < 1 && a <= b {
        return domain(format!("fermion range {a}..{b} starts below 1"));
    }
    let idx = range(a, b);
    span_check(n, &idx)?;
    Ok(idx)
}

/// `xi = sum_i x_i theta_i`
pub fn xi(n: usize) -> SuperPolynomial {
    xi_range(n, 1, n)
}

fn xi_range(n: usize, a: usize, b: usize) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero(n);
    for i in a..=b {
        out = &out + &term(n, 1, &[(i, 1)], &[i]).expect("valid term");
    }
    out
}

/// `xi_r = sum_{i=r+1}^n x_i theta_i`
pub fn xi_r(n: usize, r: usize) -> SuperPolynomial {
    xi_range(n, r + 1, n)
}

/// `xi'_r = sum_{j=1}^r x_j theta_j`
pub fn xi_prime_r(n: usize, r: usize) -> SuperPolynomial {
    xi_range(n, 1, r)
}

/// `v_t = sum_{i=1}^t (-1)^{i-1} x_i theta_1 ... ^theta_i ... theta_t`
pub fn v_t(n: usize, t: usize) -> Result<SuperPolynomial, RepError> {
    if t > n {
        return domain(format!("v_t needs t <= n, got t = {t}"));
    }
    alternating(n, &range(1, t as i64), -1)
}

/// `theta_a ... theta_b`
pub fn theta_block(n: usize, a: i64, b: i64) -> Result<SuperPolynomial, RepError> {
    let idx = contiguous(n, a, b)?;
    term(n, 1, &[], &idx)
}

/// Lowest vector for `r = n`:
/// `x_n^{n-k-2} sum_i (-1)^i x_i theta_1 ... ^theta_i ... theta_n`.
pub fn thm1_r_n_generator(n: usize, k: i64) -> Result<SuperPolynomial, RepError> {
    let e = n as i64 - k - 2;
    if e < 0 {
        return domain(format!("needs k <= n - 2, got k = {k}"));
    }
    mul(&term(n, 1, &[(n, e)], &[])?, &alternating(n, &range(1, n as i64), 0)?)
}

/// `x_n^{t-k-1} sum_{p=n-t}^n (-1)^p x_p theta_{n-t} ... ^theta_p ... theta_n`,
/// or `None` when `t = n` (the sum would start at `theta_0`).
pub fn u_tilde_generator(n: usize, k: i64, t: usize) -> Result<Option<SuperPolynomial>, RepError> {
    if t >= n {
        return Ok(None);
    }
    let e = t as i64 - k - 1;
    if e < 0 {
        return domain(format!("needs k < t, got k = {k}, t = {t}"));
    }
    let idx = contiguous(n, (n - t) as i64, n as i64)?;
    Ok(Some(mul(&term(n, 1, &[(n, e)], &[])?, &alternating(n, &idx, 0)?)?))
}

/// `x_n^{t-k} theta_{n-t+1} ... theta_n`
pub fn u_tilde_complement_generator(n: usize, k: i64, t: usize) -> Result<SuperPolynomial, RepError> {
    let idx = contiguous(n, (n - t) as i64 + 1, n as i64)?;
    term(n, 1, &[(n, t as i64 - k)], &idx)
}

/// The two generators `x_1^{k-t} theta_{n-t+1}..theta_n` and
/// `x_1^{k-t-1} theta_{n-t+2}..theta_n xi` of the even submodules of `A^0_{k,t}`.
pub fn lemma22_generators(n: usize, k: i64, t: usize) -> Result<(SuperPolynomial, SuperPolynomial), RepError> {
    let t_i = t as i64;
    let first = term(n, 1, &[(1, k - t_i)], &contiguous(n, n as i64 - t_i + 1, n as i64)?)?;
    if t == 0 {
        return domain("the second generator needs t >= 1");
    }
    let block = term(n, 1, &[(1, k - t_i - 1)], &contiguous(n, n as i64 - t_i + 2, n as i64)?)?;
    Ok((first, mul(&block, &xi(n))?))
}

/// `x_1^{k-t} theta_1 ... theta_t` and, when defined, `x_1^{k-t-1} v_{t+1}`.
pub fn lemma31_generators(n: usize, k: i64, t: usize) -> Result<(SuperPolynomial, Option<SuperPolynomial>), RepError> {
    let t_i = t as i64;
    let first = term(n, 1, &[(1, k - t_i)], &range(1, t_i))?;
    let second = if t == 0 || k - t_i - 1 < 0 || t + 1 > n {
        None
    } else {
        Some(mul(&term(n, 1, &[(1, k - t_i - 1)], &[])?, &v_t(n, t + 1)?)?)
    };
    Ok((first, second))
}

/// `x_1^k + sign * sqrt(k) x_1^{k-1} theta_1` over `Q(sqrt k)`.
pub fn thm2_generator(n: usize, k: i64, positive: bool) -> Result<SuperPolynomial, RepError> {
    if k < 1 {
        return domain(format!("needs k >= 1, got k = {k}"));
    }
    let root = Scalar::sqrt_of(k as u64);
    let root = if positive { root } else { -root };
    let head = term(n, 1, &[(1, k)], &[])?;
    let tail = term(n, 1, &[(1, k - 1)], &[1])?.scale(&root);
    Ok(&head + &tail)
}

/// Whether `l = (k + n - r) / 2`.
pub fn is_critical(n: usize, r: usize, k: i64, l: i64) -> bool {
    2 * l == k + n as i64 - r as i64
}

/// Generator of `V^r_{k,l}`: the first row of the table whose side condition
/// holds, with its 1-based row number.
pub fn table_v(n: usize, r: usize, k: i64, l: i64) -> Result<(usize, SuperPolynomial), RepError> {
    let (ni, ri) = (n as i64, r as i64);
    let nr = ni - ri;
    let crit = is_critical(n, r, k, l);
    let rows_checked = "V rows: (1) l<n-r, l<=k; (2) k<l<n-r; (3) n-r<=l<=k, l!=(k+n-r)/2; \
                        (4) n-r<=l<=k, l=(k+n-r)/2, n-l-1>=1; (5) l>k, l>=n-r";
    if l < nr && l <= k {
        return Ok((1, term(n, 1, &[(r + 1, k - l)], &contiguous(n, ni - l + 1, ni)?)?));
    }
    if k < l && l < nr {
        return Ok((2, term(n, 1, &[(r, l - k)], &contiguous(n, ni - l + 1, ni)?)?));
    }
    if nr <= l && l <= k && !crit {
        let low = contiguous(n, ni - l, ri)?;
        let mut tail = contiguous(n, ri + 2, ni)?;
        let mut first_ts = low.clone();
        first_ts.append(&mut tail);
        let first = term(n, k - l + 1, &[(r + 1, k - l)], &first_ts)?;
        let sum = alternating(n, &low, -ri)?;
        let rest = term(n, 1, &[(r + 1, k - l + 1)], &contiguous(n, ri + 1, ni)?)?;
        return Ok((3, &first + &mul(&sum, &rest)?));
    }
    if nr <= l && l <= k && crit && ni - l > 1 {
        let low = contiguous(n, ni - l - 1, ri)?;
        let sum = alternating(n, &low, 0)?;
        let rest = term(n, 1, &[(r + 1, k - l + 1)], &contiguous(n, ri + 2, ni)?)?;
        return Ok((4, mul(&sum, &rest)?));
    }
    if l > k && l >= nr {
        let low = contiguous(n, ni - l, ri)?;
        let sum = alternating(n, &low, 0)?;
        let head = term(n, 1, &[(r, l - k - 1)], &[])?;
        let rest = theta_block(n, ri + 1, ni)?;
        return Ok((5, mul(&mul(&head, &sum)?, &rest)?));
    }
    domain(format!("no generator for (n, r, k, l) = ({n}, {r}, {k}, {l}); {rows_checked}"))
}

/// Generator of `W^r_{k,l}`, selected like [`table_v`].
pub fn table_w(n: usize, r: usize, k: i64, l: i64) -> Result<(usize, SuperPolynomial), RepError> {
    let (ni, ri) = (n as i64, r as i64);
    let nr = ni - ri;
    let crit = is_critical(n, r, k, l);
    let xr = xi_r(n, r);
    let rows_checked = "W rows: (1) l<k, 1<=l<=n-r; (2) k<=l<=n-r, l!=(k+n-r)/2, l>=1; \
                        (3) k<=l<=n-r, l=(k+n-r)/2, l>=2; (4) n-r<=l<k; (5) l>=k, l>n-r";
    if l < k && l <= nr && l >= 1 {
        let head = term(n, 1, &[(r + 1, k - l - 1)], &[])?;
        let tail = theta_block(n, ni - l + 2, ni)?;
        return Ok((1, mul(&mul(&head, &xr)?, &tail)?));
    }
    if k <= l && l <= nr && !crit && l >= 1 {
        let tail = contiguous(n, ni - l + 2, ni)?;
        let mut ts = vec![r];
        ts.extend(tail.iter().copied());
        let first = term(n, l - k + 1, &[(r, l - k)], &ts)?;
        let second = mul(&mul(&term(n, 1, &[(r, l - k + 1)], &[])?, &xr)?, &term(n, 1, &[], &tail)?)?;
        return Ok((2, &first + &second));
    }
    if k <= l && l <= nr && crit && l >= 2 {
        let head = term(n, 1, &[(r, l - k + 1)], &[r])?;
        let tail = theta_block(n, ni - l + 3, ni)?;
        return Ok((3, mul(&mul(&head, &xr)?, &tail)?));
    }
    if nr <= l && l < k {
        return Ok((4, term(n, 1, &[(r + 1, k - l)], &contiguous(n, ni - l + 1, ni)?)?));
    }
    if l >= k && l > nr {
        return Ok((5, term(n, 1, &[(r, l - k)], &contiguous(n, ni - l + 1, ni)?)?));
    }
    domain(format!("no generator for (n, r, k, l) = ({n}, {r}, {k}, {l}); {rows_checked}"))
}

/// The word `(E_{2n-t+1,1} - E_{n+1,n-t+1}) ... (E_{2n,1} - E_{n+1,n})`
/// together with the scalar `(k-t)!/k!` that turns `x_1^k` into
/// `x_1^{k-t} theta_{n-t+1} ... theta_n`.
pub fn lowering_word(n: usize, k: i64, t: usize) -> Result<(Vec<crate::liealg::AlgebraElement>, BigRational), RepError> {
    if t as i64 > k || t >= n {
        return domain(format!("needs t <= k and t < n, got k = {k}, t = {t}"));
    }
    let mut word = Vec::new();
    for j in n - t + 1..=n {
        word.push(crate::liealg::AlgebraElement::from_terms(n, &[(n + j, 1, 1), (n + 1, j, -1)])?);
    }
    let mut c = BigRational::from_integer(1.into());
    for m in (k - t as i64 + 1)..=k {
        c /= BigRational::from_integer(m.into());
    }
    Ok((word, c))
}

/// A named vector with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalVector {
    pub name: String,
    pub value: SuperPolynomial,
}

/// Looks up a canonical vector by name: `xi`, `xi_r`, `xi_prime_r`, `v_t`,
/// `w` (args `k`), `u_tilde` (args `k t`), `table_v` / `table_w`
/// (args `r k l`), `thm2_plus` / `thm2_minus` (arg `k`).
pub fn canonical(name: &str, n: usize, args: &[i64]) -> Result<CanonicalVector, RepError> {
    let arg = |i: usize| -> Result<i64, RepError> {
        args.get(i).copied().ok_or_else(|| RepError::Domain(format!("{name} needs {} arguments", i + 1)))
    };
    let nonneg = |v: i64| -> Result<usize, RepError> {
        usize::try_from(v).map_err(|_| RepError::Domain(format!("{name}: argument {v} must be nonnegative")))
    };
    let value = match name {
        "xi" => xi(n),
        "xi_r" => xi_r(n, nonneg(arg(0)?)?.min(n)),
        "xi_prime_r" => xi_prime_r(n, nonneg(arg(0)?)?.min(n)),
        "v_t" => v_t(n, nonneg(arg(0)?)?)?,
        "w" => thm1_r_n_generator(n, arg(0)?)?,
        "u_tilde" => u_tilde_generator(n, arg(0)?, nonneg(arg(1)?)?)?
            .ok_or_else(|| RepError::Domain("u_tilde is zero for t = n".into()))?,
        "table_v" => table_v(n, nonneg(arg(0)?)?, arg(1)?, arg(2)?)?.1,
        "table_w" => table_w(n, nonneg(arg(0)?)?, arg(1)?, arg(2)?)?.1,
        "thm2_plus" => thm2_generator(n, arg(0)?, true)?,
        "thm2_minus" => thm2_generator(n, arg(0)?, false)?,
        _ => return Err(RepError::Domain(format!("unknown canonical vector '{name}'"))),
    };
    Ok(CanonicalVector {
        name: format!("{name}{args:?}"),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{apply_word, RepParams};
    use crate::superpoly::parse_poly;

    fn p(text: &str, n: usize) -> SuperPolynomial {
        parse_poly(text, n).unwrap()
    }

    #[test]
    fn xi_family() {
        assert_eq!(xi(3), p("x1*t1 + x2*t2 + x3*t3", 3));
        assert_eq!(xi_r(3, 1), p("x2*t2 + x3*t3", 3));
        assert_eq!(xi_prime_r(3, 1), p("x1*t1", 3));
        assert_eq!(v_t(3, 2).unwrap(), p("x1*t2 - x2*t1", 3));
    }

    #[test]
    fn lowest_vector_r_equals_n() {
        let w = thm1_r_n_generator(3, 1).unwrap();
        assert_eq!(w, p("-x1*t2*t3 + x2*t1*t3 - x3*t1*t2", 3));
        assert!(thm1_r_n_generator(3, 2).is_err());
    }

    #[test]
    fn lowering_word_identity() {
        for n in [3, 4] {
            let params = RepParams::new(n, 0).unwrap();
            for k in 1..=4i64 {
                for t in 0..=(k as usize).min(n - 1) {
                    let (word, c) = lowering_word(n, k, t).unwrap();
                    let x1k = term(n, 1, &[(1, k)], &[]).unwrap();
                    let out = apply_word(params, &word, &x1k).unwrap().scale(&Scalar::rational(c));
                    let expected = term(n, 1, &[(1, k - t as i64)], &range((n - t + 1) as i64, n as i64)).unwrap();
                    assert_eq!(out, expected, "n={n} k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn thm2_generator_text() {
        assert_eq!(thm2_generator(3, 2, true).unwrap().to_string(), "x1^2 + s2*x1*t1");
        assert_eq!(thm2_generator(3, 4, false).unwrap().to_string(), "x1^4 - 2*x1^3*t1");
    }

    #[test]
    fn table_rows() {
        assert_eq!(table_v(3, 1, 1, 1).unwrap(), (1, p("t3", 3)));
        let (row, w) = table_w(3, 1, 1, 1).unwrap();
        assert_eq!(row, 2);
        assert_eq!(w, p("t1 + x1*x2*t2 + x1*x3*t3", 3));
        assert!(table_v(3, 1, 2, 2).is_err());
        let (row, v) = table_v(4, 2, 2, 2).unwrap();
        assert_eq!(row, 4);
        assert_eq!(v, p("-x1*t2*x3*t4 + x2*t1*x3*t4", 4));
        let (row, w) = table_w(4, 2, 2, 2).unwrap();
        assert_eq!(row, 3);
        assert_eq!(w, p("x2*t2*x3*t3 + x2*t2*x4*t4", 4));
    }

    #[test]
    fn lookup() {
        assert_eq!(canonical("xi", 3, &[]).unwrap().value, xi(3));
        assert!(canonical("nope", 3, &[]).is_err());
        assert!(canonical("v_t", 3, &[]).is_err());
    }
}
