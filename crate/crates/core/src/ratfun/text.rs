//! Canonical text forms.
//!
//! Polynomials print as signed sums of terms in descending graded-lex order,
//! e.g. `2*l0^2 - 1/2*l0*l3 + 3`. Rational functions print as `(num)/(den)`.
//! The same term grammar (with signed exponents) is reused for K-theory
//! classes in variables `t0..t3`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, RatFun, Rational};
use crate::error::{Error, Result};

pub(crate) fn write_monomial<W: fmt::Write>(
    w: &mut W,
    exponents: impl IntoIterator<Item = i64>,
    prefix: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, e) in exponents.into_iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            w.write_char('*')?;
        }
        first = false;
        write!(w, "{prefix}{i}")?;
        if e != 1 {
            write!(w, "^{e}")?;
        }
    }
    Ok(())
}

/// Writes one signed term; `leading` controls whether a positive sign is printed.
pub(crate) fn write_term<W: fmt::Write>(
    w: &mut W,
    coeff: &Rational,
    exponents: &[i64],
    prefix: &str,
    leading: bool,
) -> fmt::Result {
    let neg = coeff.is_negative();
    match (leading, neg) {
        (true, true) => w.write_char('-')?,
        (true, false) => {}
        (false, true) => w.write_str(" - ")?,
        (false, false) => w.write_str(" + ")?,
    }
    let mag = coeff.abs();
    let is_unit_mono = exponents.iter().all(|&e| e == 0);
    if is_unit_mono {
        write!(w, "{mag}")
    } else if mag.is_one() {
        write_monomial(w, exponents.iter().copied(), prefix)
    } else {
        write!(w, "{mag}*")?;
        write_monomial(w, exponents.iter().copied(), prefix)
    }
}

pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, prefix: &str) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let e: Vec<i64> = m.exponents().iter().map(|&x| x as i64).collect();
        write_term(f, c, &e, prefix, i == 0)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, prefix: char, nvars: usize) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Int(text.parse().expect("digits")));
            }
            p if p == prefix => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let idx: usize = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable near position {start}")))?;
                if idx >= nvars {
                    return Err(Error::Parse(format!("variable {prefix}{idx} out of range")));
                }
                out.push(Tok::Var(idx));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
}

/// One parsed term: coefficient and (possibly negative) exponent vector.
pub(crate) type RawTerm = (Rational, Vec<i64>);

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -sign;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, e) = self.term()?;
            terms.push((c * &sign, e));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = Rational::one();
        let mut exps = vec![0i64; self.nvars];
        loop {
            match self.next() {
                Some(Tok::Int(n)) => {
                    let mut value = Rational::from_integer(n);
                    if self.peek() == Some(&Tok::Slash)
                        && matches!(self.toks.get(self.pos + 1), Some(Tok::Int(_)))
                    {
                        self.pos += 1;
                        if let Some(Tok::Int(d)) = self.next() {
                            if d.is_zero() {
                                return Err(Error::Parse("zero denominator".into()));
                            }
                            value /= Rational::from_integer(d);
                        }
                    }
                    coeff *= value;
                }
                Some(Tok::Var(v)) => {
                    let mut e = 1i64;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        let neg = if self.peek() == Some(&Tok::Minus) {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        match self.next() {
                            Some(Tok::Int(n)) => {
                                e = i64::try_from(n)
                                    .map_err(|_| Error::Parse("exponent too large".into()))?;
                                if neg {
                                    e = -e;
                                }
                            }
                            t => return Err(Error::Parse(format!("bad exponent {t:?}"))),
                        }
                    }
                    exps[v] += e;
                }
                t => return Err(Error::Parse(format!("unexpected token {t:?}"))),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, exps))
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.toks.len() {
            return Err(Error::Parse(format!(
                "trailing input at token {}",
                self.pos
            )));
        }
        Ok(())
    }
}

/// Parses a signed sum of terms in variables `{prefix}0..{prefix}{nvars-1}`.
pub(crate) fn parse_terms(s: &str, prefix: char, nvars: usize) -> Result<Vec<RawTerm>> {
    let toks = tokenize(s, prefix, nvars)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
    };
    let terms = p.sum()?;
    p.finish()?;
    Ok(terms)
}

fn terms_to_poly(terms: Vec<RawTerm>, nvars: usize) -> Result<Poly> {
    let mut out = Vec::with_capacity(terms.len());
    for (c, e) in terms {
        let exps = e
            .into_iter()
            .map(|x| u32::try_from(x).map_err(|_| Error::Parse("negative exponent".into())))
            .collect::<Result<Vec<_>>>()?;
        out.push((Monomial::new(exps), c));
    }
    Ok(Poly::from_terms(nvars, out))
}

pub fn parse_poly(s: &str, nvars: usize) -> Result<Poly> {
    terms_to_poly(parse_terms(s, 'l', nvars)?, nvars)
}

/// Parses `(num)/(den)`, `(num)` or a bare polynomial.
pub fn parse_ratfun(s: &str, nvars: usize) -> Result<RatFun> {
    let s = s.trim();
    if !s.starts_with('(') {
        return Ok(RatFun::from_poly(parse_poly(s, nvars)?));
    }
    let close = matching_paren(s, 0)?;
    let num = parse_poly(&s[1..close], nvars)?;
    let rest = s[close + 1..].trim_start();
    if rest.is_empty() {
        return Ok(RatFun::from_poly(num));
    }
    let rest = rest
        .strip_prefix('/')
        .ok_or_else(|| Error::Parse("expected '/' after numerator".into()))?
        .trim_start();
    if !rest.starts_with('(') {
        return Err(Error::Parse("denominator must be parenthesized".into()));
    }
    let close = matching_paren(rest, 0)?;
    if !rest[close + 1..].trim().is_empty() {
        return Err(Error::Parse("trailing input after denominator".into()));
    }
    let den = parse_poly(&rest[1..close], nvars)?;
    RatFun::new(num, den)
}

fn matching_paren(s: &str, open: usize) -> Result<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse("unbalanced parentheses".into()))
}
