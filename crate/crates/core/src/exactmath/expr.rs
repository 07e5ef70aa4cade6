//! Integer affine expressions such as `d-f-1` or `2*a+3`.
//!
//! Parsing goes through a small polynomial evaluator so that products of
//! variables are recognized and rejected rather than silently misread.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// `constant + Σ coeff·var`, with zero coefficients dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineExpr {
    terms: BTreeMap<String, BigInt>,
    constant: BigInt,
    source: String,
}

impl AffineExpr {
    pub fn parse(src: &str) -> Result<Self, ExactError> {
        let tokens = tokenize(src)?;
        let mut parser = Parser {
            tokens: &tokens,
            pos: 0,
            src,
        };
        let poly = parser.expr()?;
        if parser.pos != tokens.len() {
            return Err(ExactError::Parse(src.to_string()));
        }
        let mut terms = BTreeMap::new();
        let mut constant = BigInt::zero();
        for (mono, c) in poly {
            match mono.len() {
                0 => constant = c,
                1 => {
                    terms.insert(mono[0].clone(), c);
                }
                _ => return Err(ExactError::NonAffine(src.to_string())),
            }
        }
        Ok(AffineExpr {
            terms,
            constant,
            source: src.trim().to_string(),
        })
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.constant
    }

    pub fn coeff(&self, var: &str) -> BigInt {
        self.terms.get(var).cloned().unwrap_or_default()
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates with every variable bound; unbound variables are an error.
    pub fn eval(&self, env: &BTreeMap<&str, i64>) -> Result<i64, ExactError> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.terms {
            let x = env
                .get(v.as_str())
                .ok_or_else(|| ExactError::UnboundVariable(v.clone()))?;
            acc += c * BigInt::from(*x);
        }
        acc.to_i64().ok_or(ExactError::Overflow)
    }
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.source.is_empty() {
            return f.write_str(&self.source);
        }
        let mut first = true;
        for (v, c) in &self.terms {
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}{v}")?;
            } else {
                write!(f, "{sign}{mag}*{v}")?;
            }
            first = false;
        }
        if first || !self.constant.is_zero() {
            let sign = if self.constant.is_negative() || first {
                ""
            } else {
                "+"
            };
            write!(f, "{sign}{}", self.constant)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineExpr({self})")
    }
}

impl Serialize for AffineExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AffineExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        AffineExpr::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ExactError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(
                    s.parse().map_err(|_| ExactError::Parse(src.into()))?,
                ));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(ExactError::Parse(src.to_string())),
        }
    }
    Ok(out)
}

/// Sparse multivariate polynomial: sorted variable multiset → coefficient.
type Poly = BTreeMap<Vec<String>, BigInt>;

fn poly_add(mut a: Poly, b: Poly, sign: i32) -> Poly {
    for (m, c) in b {
        let e = a.entry(m).or_default();
        if sign < 0 {
            *e -= c;
        } else {
            *e += c;
        }
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            m.extend(mb.iter().cloned());
            m.sort();
            *out.entry(m).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct Parser<'a> {
    tokens: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self) -> ExactError {
        ExactError::Parse(self.src.to_string())
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly, ExactError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            let sign = match t {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = poly_add(acc, rhs, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ExactError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = poly_mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ExactError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let inner = self.unary()?;
                Ok(poly_add(Poly::new(), inner, -1))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exp = match self.tokens.get(self.pos) {
                Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| self.err())?,
                _ => return Err(self.err()),
            };
            self.pos += 1;
            let mut acc: Poly = [(Vec::new(), BigInt::one())].into_iter().collect();
            for _ in 0..exp {
                acc = poly_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ExactError> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err())?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let mut p = Poly::new();
                if !n.is_zero() {
                    p.insert(Vec::new(), n);
                }
                Ok(p)
            }
            Tok::Ident(v) => Ok([(vec![v], BigInt::one())].into_iter().collect()),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.tokens.get(self.pos) != Some(&Tok::RParen) {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_affine_forms() {
        let e = AffineExpr::parse("d - f - 1").unwrap();
        assert_eq!(e.coeff("d"), BigInt::from(1));
        assert_eq!(e.coeff("f"), BigInt::from(-1));
        assert_eq!(*e.constant_term(), BigInt::from(-1));
        let env = [("d", 9), ("f", 4)].into_iter().collect();
        assert_eq!(e.eval(&env).unwrap(), 4);

        let e = AffineExpr::parse("2*(a+1) - a").unwrap();
        assert_eq!(e.coeff("a"), BigInt::from(1));
        assert_eq!(*e.constant_term(), BigInt::from(2));
        // cancelling products are still affine
        assert!(AffineExpr::parse("d*d - d^2 + d").unwrap().coeff("d") == BigInt::from(1));
    }

    #[test]
    fn rejects_nonlinear() {
        assert!(matches!(
            AffineExpr::parse("d*d"),
            Err(ExactError::NonAffine(_))
        ));
        assert!(matches!(
            AffineExpr::parse("d^2 + 1"),
            Err(ExactError::NonAffine(_))
        ));
        assert!(matches!(
            AffineExpr::parse("a*f"),
            Err(ExactError::NonAffine(_))
        ));
        assert!(AffineExpr::parse("d +").is_err());
        assert!(AffineExpr::parse("d / 2").is_err());
    }

    #[test]
    fn unbound_variable() {
        let e = AffineExpr::parse("y+1").unwrap();
        assert!(matches!(
            e.eval(&BTreeMap::new()),
            Err(ExactError::UnboundVariable(_))
        ));
    }
}
