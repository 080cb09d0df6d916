//! Text form of super polynomials.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int | int '/' int | 's' int | 'x' int ('^' int)? | 't' int
//! ```
//!
//! `sN` stands for `sqrt(N)`. A leading sign is accepted and whitespace is
//! ignored. Formatting writes each `a + b*sqrt(d)` coefficient as two
//! adjacent terms, so the output always parses back to the same value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, SuperPolynomial};
use crate::scalar::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small(&mut self, what: &str) -> Result<(usize, usize), PolyError> {
        self.skip_ws();
        let at = self.pos;
        let v = self.integer()?;
        match usize::try_from(&v) {
            Ok(v) => Ok((at, v)),
            Err(_) => self.err(at, format!("{what} too large")),
        }
    }

    fn index(&mut self) -> Result<usize, PolyError> {
        let (at, i) = self.small("variable index")?;
        if i == 0 || i > self.n {
            return self.err(at, format!("variable index {i} out of range 1..={}", self.n));
        }
        Ok(i)
    }

    fn term(&mut self) -> Result<(Scalar, Vec<u32>, Vec<usize>), PolyError> {
        let mut coeff = Scalar::one();
        let mut alpha = vec![0u32; self.n];
        let mut fermions = Vec::new();
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let i = self.index()?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let (eat, v) = self.small("exponent")?;
                        e = match u32::try_from(v) {
                            Ok(v) => v,
                            Err(_) => return self.err(eat, "exponent too large"),
                        };
                    }
                    alpha[i - 1] += e;
                }
                Some(b't') => {
                    self.pos += 1;
                    fermions.push(self.index()?);
                }
                Some(b's') => {
                    self.pos += 1;
                    let (_, k) = self.small("radicand")?;
                    let factor = Scalar::sqrt_of(k as u64);
                    coeff = match coeff.checked_mul(&factor) {
                        Ok(c) => c,
                        Err(e) => return self.err(at, e.to_string()),
                    };
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let mut q = BigRational::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let dat = self.pos;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return self.err(dat, "zero denominator");
                        }
                        q /= BigRational::from_integer(den);
                    }
                    coeff = &coeff * &Scalar::rational(q);
                }
                Some(c) => return self.err(self.pos, format!("unexpected character '{}'", c as char)),
                None => return self.err(self.pos, "unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, alpha, fermions));
            }
        }
    }

    fn poly(&mut self) -> Result<SuperPolynomial, PolyError> {
        let mut out = SuperPolynomial::zero(self.n);
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let at = self.pos;
            let (coeff, alpha, fermions) = self.term()?;
            let coeff = if negative { -coeff } else { coeff };
            if let Some((sign, mono)) = Monomial::from_unordered(alpha, &fermions)? {
                let coeff = if sign < 0 { -coeff } else { coeff };
                let before = out.field()?;
                if before != 0 && coeff.discriminant() != 0 && before != coeff.discriminant() {
                    return self.err(at, format!("field mismatch: s{before} and s{}", coeff.discriminant()));
                }
                out.add_term(mono, coeff);
            }
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => return Ok(out),
                Some(c) => return self.err(self.pos, format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
        }
    }
}

/// Parses `text` as a polynomial in `x1..xn, t1..tn`.
pub fn parse_poly(text: &str, n: usize) -> Result<SuperPolynomial, PolyError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    parser.poly()
}

fn push_piece(out: &mut String, q: &BigRational, radical: Option<u64>, mono: &Monomial) {
    if q.is_zero() {
        return;
    }
    if out.is_empty() {
        if q.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(if q.is_negative() { " - " } else { " + " });
    }
    let a = q.abs();
    let mut factors = Vec::new();
    let unit_mono = mono.degree() == 0 && mono.fermion_count() == 0;
    if !a.is_one() || (radical.is_none() && unit_mono) {
        factors.push(if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        });
    }
    if let Some(d) = radical {
        factors.push(format!("s{d}"));
    }
    if !unit_mono {
        factors.push(mono.to_string());
    }
    out.push_str(&factors.join("*"));
}

/// Canonical text of `p`; `"0"` for the zero polynomial.
pub fn format_poly(p: &SuperPolynomial) -> String {
    let mut out = String::new();
    for (mono, c) in p.terms() {
        push_piece(&mut out, c.rational_part(), None, mono);
        push_piece(&mut out, c.irrational_part(), Some(c.discriminant()), mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_signs() {
        let p = parse_poly("t1 - 2*x2 + x1^2*t1*t2 + x1", 2).unwrap();
        assert_eq!(format_poly(&p), "x1^2*t1*t2 + x1 - 2*x2 + t1");
    }

    #[test]
    fn leading_negative() {
        let p = parse_poly("-2*x1 + 1/3", 1).unwrap();
        assert_eq!(format_poly(&p), "-2*x1 + 1/3");
    }

    #[test]
    fn quadratic_coefficients_split() {
        let p = parse_poly("x1 + s2*x1 - 3/2*s2*t1", 1).unwrap();
        assert_eq!(format_poly(&p), "x1 + s2*x1 - 3/2*s2*t1");
        let q = parse_poly("x1*s2 + x1", 1).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(format_poly(&q), "x1 + s2*x1");
    }

    #[test]
    fn perfect_square_radicand() {
        let p = parse_poly("s4*x1", 1).unwrap();
        assert_eq!(format_poly(&p), "2*x1");
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(format_poly(&parse_poly("x1 - x1", 1).unwrap()), "0");
        assert_eq!(format_poly(&parse_poly("-1", 1).unwrap()), "-1");
        assert_eq!(format_poly(&parse_poly("s3", 1).unwrap()), "s3");
        assert_eq!(format_poly(&parse_poly("0", 3).unwrap()), "0");
    }

    #[test]
    fn unordered_fermions_pick_up_sign() {
        let p = parse_poly("t2*t1", 2).unwrap();
        assert_eq!(format_poly(&p), "-t1*t2");
        assert!(parse_poly("t1*t1", 2).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_poly("x1 + x7", 3) {
            Err(PolyError::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x1 + ", 3) {
            Err(PolyError::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("1/0", 1), Err(PolyError::Parse { offset: 2, .. })));
        assert!(matches!(parse_poly("s2*x1 + s3*x1", 1), Err(PolyError::Parse { offset: 7, .. })));
    }
}
