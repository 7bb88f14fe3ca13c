//! Text syntax for differential polynomials.
//!
//! `3/4 E^2 + F`, `q'' + 3q^2`, `q[4]` (fourth jet), `i q' q^-1`,
//! `(q qbar)''` (derivative of a group), `lambda` / `λ` for the spectral
//! parameter. Juxtaposition multiplies; `/` divides by a scalar or by a
//! monomial in invertible variables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::DiffPoly;
use super::ring::RingRef;
use super::substitute::invert_monomial;
use crate::error::{Error, ParseError, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Prime,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(s: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Num(parse_decimal(&text, pos)?), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Ident(text), pos));
            }
            _ => {
                let t = match c {
                    '\'' => Tok::Prime,
                    '[' => Tok::LBrack,
                    ']' => Tok::RBrack,
                    '(' | '{' => Tok::LParen,
                    ')' | '}' => Tok::RParen,
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    _ => return Err(ParseError::new(format!("unexpected character '{c}'"), pos)),
                };
                out.push((t, pos));
                i += 1;
            }
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str, pos: usize) -> std::result::Result<BigRational, ParseError> {
    let bad = || ParseError::new(format!("bad number '{text}'"), pos);
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(n, d))
}

/// Polynomial in λ with `DiffPoly` coefficients, keyed by power.
type LVal = BTreeMap<u32, DiffPoly>;

struct Parser<'a> {
    ring: &'a RingRef,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(ParseError::new(msg, self.offset()).into())
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn scalar(&self, c: GaussianRational) -> LVal {
        let mut v = LVal::new();
        let p = DiffPoly::constant(self.ring, c);
        if !p.is_zero() {
            v.insert(0, p);
        }
        v
    }

    fn expr(&mut self) -> Result<LVal> {
        let mut acc = LVal::new();
        let mut first = true;
        loop {
            let neg = if self.eat(&Tok::Minus) {
                true
            } else {
                let plus = self.eat(&Tok::Plus);
                if !first && !plus {
                    break;
                }
                false
            };
            first = false;
            let t = self.term()?;
            acc = if neg { sub(&acc, &t) } else { add(&acc, &t) };
            if !matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
                break;
            }
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<LVal> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                let f = self.factor()?;
                acc = mul(&acc, &f);
            } else if self.eat(&Tok::Slash) {
                let at = self.offset();
                let f = self.factor()?;
                acc = self.divide(&acc, &f, at)?;
            } else if self.starts_atom() {
                let f = self.factor()?;
                acc = mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&self, a: &LVal, b: &LVal, at: usize) -> Result<LVal> {
        let inv = match b.get(&0) {
            Some(d) if b.len() == 1 => invert_monomial(d).map_err(|_| {
                Error::from(ParseError::new(
                    "can only divide by a monomial in invertible variables",
                    at,
                ))
            })?,
            _ => {
                return Err(
                    ParseError::new("division by zero or by a λ-dependent expression", at).into(),
                )
            }
        };
        Ok(a.iter().map(|(k, v)| (*k, v * &inv)).collect())
    }

    fn factor(&mut self) -> Result<LVal> {
        if self.eat(&Tok::Minus) {
            let f = self.factor()?;
            return Ok(neg(&f));
        }
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = self.exponent()?;
        self.power(&base, e)
    }

    fn exponent(&mut self) -> Result<i32> {
        let paren = self.eat(&Tok::LParen);
        let neg = self.eat(&Tok::Minus);
        let e = match self.peek().cloned() {
            Some(Tok::Num(n)) if n.is_integer() => {
                self.pos += 1;
                i32::try_from(n.to_integer()).or_else(|_| self.err("exponent too large"))?
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren && !self.eat(&Tok::RParen) {
            return self.err("expected ')'");
        }
        Ok(if neg { -e } else { e })
    }

    fn power(&self, base: &LVal, e: i32) -> Result<LVal> {
        if e >= 0 {
            let mut acc = self.scalar(GaussianRational::one());
            for _ in 0..e {
                acc = mul(&acc, base);
            }
            return Ok(acc);
        }
        let one = self.scalar(GaussianRational::one());
        let inv = self.divide(&one, base, self.offset())?;
        self.power(&inv, -e)
    }

    fn atom(&mut self) -> Result<LVal> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        let start = self.offset();
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.scalar(GaussianRational::real(n))),
            Tok::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                let k = self.primes();
                Ok(inner
                    .into_iter()
                    .map(|(p, v)| (p, v.nth_derivative(k)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect())
            }
            Tok::Ident(name) => {
                if self.ring.index(&name).is_none() {
                    if name == "i" {
                        return Ok(self.scalar(GaussianRational::i()));
                    }
                    if name == "lambda" || name == "λ" {
                        let mut v = LVal::new();
                        v.insert(1, DiffPoly::one(self.ring));
                        return Ok(v);
                    }
                }
                let mut order = self.primes();
                if self.eat(&Tok::LBrack) {
                    match self.peek().cloned() {
                        Some(Tok::Num(n)) if n.is_integer() && order == 0 => {
                            self.pos += 1;
                            order = usize::try_from(n.to_integer())
                                .or_else(|_| self.err("bad jet order"))?;
                        }
                        _ => return self.err("expected jet order"),
                    }
                    if !self.eat(&Tok::RBrack) {
                        return self.err("expected ']'");
                    }
                }
                let p = DiffPoly::jet(self.ring, &name, order).map_err(|e| match e {
                    Error::UnknownVariable(v) => {
                        Error::from(ParseError::new(format!("unknown variable '{v}'"), start))
                    }
                    e => e,
                })?;
                let mut v = LVal::new();
                if !p.is_zero() {
                    v.insert(0, p);
                }
                Ok(v)
            }
            _ => {
                self.pos -= 1;
                self.err("expected a number, variable or '('")
            }
        }
    }

    fn primes(&mut self) -> usize {
        let mut k = 0;
        while self.eat(&Tok::Prime) {
            k += 1;
        }
        k
    }
}

fn add(a: &LVal, b: &LVal) -> LVal {
    let mut out = a.clone();
    for (k, v) in b {
        let s = match out.get(k) {
            Some(x) => x + v,
            None => v.clone(),
        };
        if s.is_zero() {
            out.remove(k);
        } else {
            out.insert(*k, s);
        }
    }
    out
}

fn neg(a: &LVal) -> LVal {
    a.iter().map(|(k, v)| (*k, -v)).collect()
}

fn sub(a: &LVal, b: &LVal) -> LVal {
    add(a, &neg(b))
}

fn mul(a: &LVal, b: &LVal) -> LVal {
    let mut out = LVal::new();
    for (i, x) in a {
        for (j, y) in b {
            let t = x * y;
            out = add(&out, &[(i + j, t)].into_iter().collect());
        }
    }
    out
}

fn run(ring: &RingRef, s: &str) -> Result<LVal> {
    let toks = lex(s)?;
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: s.len(),
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Parses a differential polynomial over `ring`.
pub fn parse(ring: &RingRef, s: &str) -> Result<DiffPoly> {
    let v = run(ring, s)?;
    if v.keys().any(|k| *k > 0) {
        return Err(ParseError::new("λ is not allowed here", 0).into());
    }
    Ok(v.get(&0).cloned().unwrap_or_else(|| DiffPoly::zero(ring)))
}

/// Parses a polynomial in λ; returns coefficients in ascending powers.
pub fn parse_lambda_coeffs(ring: &RingRef, s: &str) -> Result<Vec<DiffPoly>> {
    let v = run(ring, s)?;
    let deg = v.keys().next_back().copied().unwrap_or(0);
    Ok((0..=deg)
        .map(|k| v.get(&k).cloned().unwrap_or_else(|| DiffPoly::zero(ring)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::{Ring, VarSpec};

    #[test]
    fn basic_forms() {
        let r = Ring::jets(&["q"]);
        let a = parse(&r, "q[4] + 10 q q'' + 5 q'^2 + 10q^3").unwrap();
        let b = parse(&r, "q'''' + 5(q')^2 + 10*q^3 + 10 q*q''").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse(&r, "(q^2)'").unwrap(), parse(&r, "2 q q'").unwrap());
        assert_eq!(parse(&r, "3/4 - 0.25").unwrap(), parse(&r, "1/2").unwrap());
        assert_eq!(parse(&r, "q - q").unwrap(), DiffPoly::zero(&r));
        assert_eq!(parse(&r, "-(-q)").unwrap(), parse(&r, "q").unwrap());
    }

    #[test]
    fn complex_and_laurent() {
        let r = Ring::new(vec![VarSpec::invertible("q"), VarSpec::invertible("qbar")]).unwrap();
        let a = parse(&r, "i q'/q").unwrap();
        let b = parse(&r, "i q' q^-1").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse(&r, "q^(-2) q^2").unwrap(), DiffPoly::one(&r));
        assert!(parse(&r, "1/(q + qbar)").is_err());
        let j = Ring::jets(&["u"]);
        assert!(parse(&j, "u^-1").is_err());
    }

    #[test]
    fn lambda_polys() {
        let r = Ring::jets(&["q"]);
        let c = parse_lambda_coeffs(&r, "8 lambda^2 + 4 q λ + q'' + 3 q^2").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[1], parse(&r, "4q").unwrap());
        assert!(parse(&r, "lambda q").is_err());
    }

    #[test]
    fn errors_have_positions() {
        let r = Ring::jets(&["q"]);
        match parse(&r, "q + w") {
            Err(Error::Parse(e)) => assert_eq!(e.pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse(&r, "").is_err());
        assert!(parse(&r, "q +").is_err());
        assert!(parse(&r, "(q").is_err());
        assert!(parse(&r, "q $").is_err());
    }
}
