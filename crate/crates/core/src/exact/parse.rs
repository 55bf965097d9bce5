//! Text input for polynomials and binary forms.
//!
//! Accepted: integer-coefficient expressions in `x` (and `y` for forms) using
//! `+ - * ^` (or `**`), parentheses and implicit multiplication such as `3x^2`,
//! or a bracketed coefficient list written from the leading term down, e.g.
//! `[1, -1, -4, 4, 1]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::form::BinForm;
use super::poly::IntPoly;
use crate::error::{Error, Result};

type Poly2 = BTreeMap<(usize, usize), BigInt>;

fn clean(mut p: Poly2) -> Poly2 {
    p.retain(|_, c| !c.is_zero());
    p
}

fn add(a: &Poly2, b: &Poly2, sign: i32) -> Poly2 {
    let mut out = a.clone();
    for (k, c) in b {
        let e = out.entry(*k).or_insert_with(BigInt::zero);
        if sign > 0 {
            *e += c;
        } else {
            *e -= c;
        }
    }
    clean(out)
}

fn mul(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for ((i, j), c) in a {
        for ((k, l), d) in b {
            *out.entry((i + k, j + l)).or_insert_with(BigInt::zero) += c * d;
        }
    }
    clean(out)
}

fn constant(c: BigInt) -> Poly2 {
    clean(Poly2::from([((0, 0), c)]))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| Error::Parse(text.clone()))?));
            }
            'x' | 'y' | 'X' | 'Y' => out.push(Tok::Var(c.to_ascii_lowercase())),
            '+' => out.push(Tok::Plus),
            '-' | '\u{2212}' => out.push(Tok::Minus),
            '*' => {
                if i + 1 < chars.len() && chars[i + 1] == '*' {
                    i += 1;
                    out.push(Tok::Caret);
                } else {
                    out.push(Tok::Star);
                }
            }
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => return Err(Error::Parse(format!("unexpected character '{c}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly2> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(&acc, &t, 1);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(&acc, &t, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = mul(&acc, &f);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly2> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let u = self.unary()?;
                Ok(add(&Poly2::new(), &u, -1))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly2> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = match self.next() {
                Some(Tok::Num(n)) => n,
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            };
            let e: u32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut acc = constant(BigInt::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly2> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(constant(n)),
            Some(Tok::Var('x')) => Ok(Poly2::from([((1, 0), BigInt::one())])),
            Some(Tok::Var(_)) => Ok(Poly2::from([((0, 1), BigInt::one())])),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<BigInt>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient '{t}'"))))
        .collect()
}

fn parse_expr(s: &str) -> Result<Poly2> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(e)
}

/// Parse a univariate polynomial in `x`.
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    if s.trim_start().starts_with('[') {
        let mut c = parse_list(s)?;
        c.reverse();
        return Ok(IntPoly::new(c));
    }
    let e = parse_expr(s)?;
    let deg = e.keys().map(|(i, _)| *i).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for ((i, j), c) in e {
        if j != 0 {
            return Err(Error::Parse("unexpected variable y in a univariate polynomial".into()));
        }
        coeffs[i] = c;
    }
    Ok(IntPoly::new(coeffs))
}

/// Parse a binary form in `x, y`. A univariate expression in `x` is homogenized
/// to its degree.
pub fn parse_form(s: &str) -> Result<BinForm> {
    if s.trim_start().starts_with('[') {
        let mut c = parse_list(s)?;
        c.reverse();
        return BinForm::new(c);
    }
    let e = parse_expr(s)?;
    if e.is_empty() {
        return Err(Error::Parse("zero form".into()));
    }
    let has_y = e.keys().any(|(_, j)| *j > 0);
    let d = if has_y {
        let degs: Vec<usize> = e.keys().map(|(i, j)| i + j).collect();
        let d = degs[0];
        if degs.iter().any(|&k| k != d) {
            return Err(Error::Parse("form is not homogeneous".into()));
        }
        d
    } else {
        e.keys().map(|(i, _)| *i).max().unwrap_or(0)
    };
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for ((i, _), c) in e {
        coeffs[i] = c;
    }
    BinForm::new(coeffs)
}

/// Parse a rational number: an integer, `a/b`, or a decimal such as `-1.827` or `2.5e-3`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a number: '{s}'"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(digits);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -q } else { q })
}
