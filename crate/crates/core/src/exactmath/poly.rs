//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{ExactError, Rational};

/// `coeffs[k]` is the coefficient of `x^k`; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawPoly", into = "RawPoly")]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    coeffs: Vec<Rational>,
}

impl TryFrom<RawPoly> for UniPoly {
    type Error = ExactError;
    fn try_from(raw: RawPoly) -> Result<Self, Self::Error> {
        Ok(UniPoly::new(raw.coeffs))
    }
}

impl From<UniPoly> for RawPoly {
    fn from(p: UniPoly) -> Self {
        RawPoly { coeffs: p.coeffs }
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `scale * x + shift`.
    pub fn linear(scale: Rational, shift: Rational) -> Self {
        Self::new(vec![shift, scale])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// The `k` highest-degree terms as `(exponent, coefficient)`, counting down
    /// from the degree. Positions past the constant term are padded with `(0, 0)`.
    pub fn top_coefficients(&self, k: usize) -> Result<Vec<(usize, Rational)>, ExactError> {
        let deg = self.degree().ok_or(ExactError::ZeroPolynomial)?;
        if k == 0 {
            return Err(ExactError::InvalidArgument("k must be at least 1".into()));
        }
        Ok((0..k)
            .map_while(|j| deg.checked_sub(j))
            .map(|e| (e, self.coeff(e)))
            .chain(std::iter::repeat_with(|| (0, Rational::zero())))
            .take(k)
            .collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl UniPoly {
    /// Renders with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag == Rational::one();
            match e {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&mag.to_string());
                        out.push('*');
                    }
                    out.push_str(var);
                    if e > 1 {
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("d"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_evaluates() {
        let p = UniPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval_int(3), Rational::from(7));
        assert_eq!(UniPoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn compose_with_shift() {
        // (x+1)^2 at x -> x-1 gives x^2
        let p = UniPoly::from_ints(&[1, 2, 1]);
        let q = p.compose(&UniPoly::from_ints(&[-1, 1]));
        assert_eq!(q, UniPoly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn top_terms() {
        let p = UniPoly::new(vec![
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::frac(-168, 5),
            Rational::from(8),
        ]);
        assert_eq!(
            p.top_coefficients(2).unwrap(),
            vec![(6, Rational::from(8)), (5, Rational::frac(-168, 5))]
        );
        assert_eq!(
            UniPoly::from_ints(&[5]).top_coefficients(1).unwrap(),
            vec![(0, Rational::from(5))]
        );
        assert_eq!(
            UniPoly::from_ints(&[0, 0, 0, 1])
                .top_coefficients(2)
                .unwrap(),
            vec![(3, Rational::one()), (2, Rational::zero())]
        );
        assert!(UniPoly::zero().top_coefficients(1).is_err());
        // a constant asked for two terms pads with a zero
        assert_eq!(
            UniPoly::from_ints(&[5]).top_coefficients(2).unwrap(),
            vec![(0, Rational::from(5)), (0, Rational::zero())]
        );
    }

    #[test]
    fn json_shape() {
        let p = UniPoly::new(vec![Rational::frac(1, 2), Rational::from(-3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":["1/2","-3"]}"#);
        let back: UniPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = UniPoly::new(vec![
            Rational::from(-6),
            Rational::zero(),
            Rational::frac(-15, 1),
            Rational::from(4),
        ]);
        assert_eq!(p.to_string(), "4*d^3 - 15*d^2 - 6");
    }
}
